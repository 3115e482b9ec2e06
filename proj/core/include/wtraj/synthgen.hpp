#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wtraj/model.hpp"
#include "wtraj/preprocess.hpp"

namespace wtraj {

enum class Archetype { RegularCommuter, MultiLegCommuter, ShiftWorker, SporadicTraveller };

std::string_view to_string(Archetype archetype);
std::optional<Archetype> parse_archetype(std::string_view text);

struct ArchetypeCounts {
    std::size_t regular_commuters = 1;
    std::size_t multi_leg_commuters = 0;
    std::size_t shift_workers = 0;
    std::size_t sporadic_travellers = 0;

    std::size_t total() const {
        return regular_commuters + multi_leg_commuters + shift_workers + sporadic_travellers;
    }
};

/// "S001", "S002", ...
std::vector<std::string> default_station_names(std::size_t count = 50);

struct SynthConfig {
    std::vector<std::string> stations = default_station_names();
    ArchetypeCounts agents;
    int days = 5;
    /// Local calendar date of day 0, YYYY-MM-DD. The default is a Monday.
    std::string start_date = "2018-03-05";
    /// Probability that an observation is never recorded.
    double event_dropout_prob = 0.0;
    /// Probability that an observation's exit is lost and merged with the
    /// exit of the device's next observation at the same location.
    double missing_exit_prob = 0.0;
    /// Probability that a station visit has a short coverage hole.
    double blackspot_gap_prob = 0.0;
    DurationMs max_blackspot_gap = 20 * kMsPerMinute;
    /// Probability that a visit is also seen by a BLE beacon inside the WAP range.
    double ble_overlap_prob = 0.25;
    int min_intermediate_stops = 0;
    int max_intermediate_stops = 2;
    std::uint64_t seed = 1;
    std::string timezone = "Europe/London";

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

struct AgentTruth {
    std::string device_id;
    Archetype archetype = Archetype::RegularCommuter;
    std::optional<std::string> home;
    std::optional<std::string> work;
    /// Morning route for commuters; empty for sporadic travellers.
    std::vector<std::string> planned_route;
    /// Non-home/work places where the agent rests (render as O).
    std::vector<std::string> rest_places;
    /// Station sequence of every trip as it survived the noise model,
    /// adjacent duplicates merged. Trips with no surviving observation are omitted.
    std::vector<std::vector<std::string>> observed_trips;

    bool operator==(const AgentTruth&) const = default;
};

struct GroundTruthManifest {
    std::uint64_t seed = 0;
    std::vector<AgentTruth> agents;

    bool operator==(const GroundTruthManifest&) const = default;
};

struct SyntheticCorpus {
    ObservationsByDevice observations;
    GroundTruthManifest manifest;
};

/// Deterministic for a given config. Agent i draws from its own generator
/// seeded with (seed, i), so agents do not perturb each other.
SyntheticCorpus generate(const SynthConfig& config);

/// Journey string a correct pipeline would produce for this agent, from the
/// ground-truth labels and the observed trips.
std::string expected_journey_string(const AgentTruth& truth);

/// A single-trajectory test case shaped after a manually inspected pattern.
struct Fixture {
    std::string name;
    std::vector<WirelessObservation> observations;
    AgentTruth truth;
    /// Set when the trajectory is expected to be filtered out.
    std::optional<DiscardReason> expected_discard;
    /// Set on the case the labelling heuristic is known to get wrong.
    bool documented_failure = false;
};

/// Fourteen fixtures: five commuter shapes, five problematic shapes, and four
/// further commuter variants. Exactly one (night shift) is a documented failure.
std::vector<Fixture> fixture_suite(std::uint64_t seed = 2018);

}  // namespace wtraj
