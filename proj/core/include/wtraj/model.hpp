#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wtraj {

/// Milliseconds since 1970-01-01T00:00Z.
using TimestampMs = std::int64_t;
using DurationMs = std::int64_t;

inline constexpr DurationMs kMsPerSecond = 1000;
inline constexpr DurationMs kMsPerMinute = 60 * kMsPerSecond;
inline constexpr DurationMs kMsPerHour = 60 * kMsPerMinute;
inline constexpr DurationMs kMsPerDay = 24 * kMsPerHour;

/// 2000-01-01T00:00Z. Anything earlier is a device clock fault.
inline constexpr TimestampMs kEarliestValidTimestamp = 946'684'800'000;

enum class BeaconKind { Wap, Ble };

std::string_view to_string(BeaconKind kind);
std::optional<BeaconKind> parse_beacon_kind(std::string_view text);

/// One raw record: a device was in range of one beacon between entry and exit.
struct WirelessObservation {
    std::string device_id;
    std::string observation_id;
    std::string beacon_id;
    BeaconKind beacon_kind = BeaconKind::Wap;
    std::string region_id;
    std::string location;
    TimestampMs entry_time = 0;
    TimestampMs exit_time = 0;
    /// Carried through untouched when the input has it.
    std::string phone_model;

    bool operator==(const WirelessObservation&) const = default;
};

/// Observations keyed by device id.
using ObservationsByDevice = std::map<std::string, std::vector<WirelessObservation>>;

enum class ObservationIssue { EntryAfterExit, EmptyLocation, BeforeEarliestTimestamp };

std::string_view to_string(ObservationIssue issue);

struct ObservationVerdict {
    std::optional<ObservationIssue> issue;

    bool valid() const { return !issue.has_value(); }
};

/// Checks are applied in order: ordering, location, timestamp cutoff.
ObservationVerdict validate_observation(const WirelessObservation& obs,
                                        TimestampMs earliest_valid = kEarliestValidTimestamp);

enum class EventKind { Entry, Exit };

std::string_view to_string(EventKind kind);

/// One half of a split observation.
struct TrajectoryEvent {
    std::string source_observation_id;
    EventKind kind = EventKind::Entry;
    std::string location;
    TimestampMs timestamp = 0;

    bool operator==(const TrajectoryEvent&) const = default;
};

/// A maximal run of events whose consecutive gaps do not exceed the journey gap.
///
/// Construction validates ordering and the gap bound and derives the location
/// sequence with adjacent duplicates merged.
class Journey {
public:
    Journey() = default;

    /// Throws std::invalid_argument if events are empty, out of order, or a
    /// gap exceeds `max_gap`.
    Journey(std::vector<TrajectoryEvent> events, DurationMs max_gap);

    const std::vector<TrajectoryEvent>& events() const { return events_; }
    const std::vector<std::string>& location_sequence() const { return locations_; }

    TimestampMs start_time() const { return events_.front().timestamp; }
    TimestampMs end_time() const { return events_.back().timestamp; }
    DurationMs duration() const { return end_time() - start_time(); }

    bool operator==(const Journey&) const = default;

private:
    std::vector<TrajectoryEvent> events_;
    std::vector<std::string> locations_;
};

struct OfflineRestLocation {
    std::string location;
    /// Chronological.
    std::vector<DurationMs> rest_durations;
    int home_score = 0;
    int work_score = 0;

    DurationMs total_rest() const;

    bool operator==(const OfflineRestLocation&) const = default;
};

enum class LocationLabel { Home, Work, OtherOrl, Unknown };

char token(LocationLabel label);
std::optional<LocationLabel> label_from_token(char token);

/// Home/work assignment for one consumer. Locations absent from the map are Unknown.
struct LocationLabels {
    std::optional<std::string> home;
    std::optional<std::string> work;
    std::map<std::string, LocationLabel> by_location;

    LocationLabel label_of(const std::string& location) const;

    bool operator==(const LocationLabels&) const = default;
};

/// Journey token string -> number of journeys with that pattern.
using PatternCounts = std::map<std::string, int>;

/// The four numeric clustering features, in metric component order.
struct FeatureVector {
    static constexpr std::size_t kSize = 4;

    double journey_frequency = 0.0;      ///< journeys per day
    double locations_per_journey = 0.0;  ///< mean location-sequence length
    double avg_journey_duration = 0.0;   ///< milliseconds
    double journeys_per_orl = 0.0;

    std::array<double, kSize> values() const {
        return {journey_frequency, locations_per_journey, avg_journey_duration, journeys_per_orl};
    }
    static FeatureVector from_values(const std::array<double, kSize>& v) {
        return {v[0], v[1], v[2], v[3]};
    }

    bool operator==(const FeatureVector&) const = default;
};

inline constexpr std::array<std::string_view, FeatureVector::kSize> kFeatureNames = {
    "journey_frequency", "locations_per_journey", "avg_journey_duration_ms", "journeys_per_orl"};

struct ConsumerProfile {
    std::string device_id;
    std::vector<Journey> journeys;
    std::vector<OfflineRestLocation> orls;
    LocationLabels labels;
    PatternCounts pattern_counts;
    FeatureVector features;

    bool operator==(const ConsumerProfile&) const = default;
};

}  // namespace wtraj
