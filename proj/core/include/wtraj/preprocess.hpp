#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wtraj/model.hpp"

namespace wtraj {

struct PreprocessConfig {
    DurationMs max_gap_in_journey = 80 * kMsPerMinute;
    DurationMs min_rest_for_orl = 30 * kMsPerMinute;
    int min_trajectory_length = 10;  ///< split events
    int min_days_data = 1;
    TimestampMs earliest_valid_timestamp = kEarliestValidTimestamp;

    /// Throws std::invalid_argument unless every field is positive.
    void validate() const;
};

/// Sorts by entry time, then exit time, then observation id.
void sort_observations(std::vector<WirelessObservation>& observations);

/// Splits each observation into an Entry and an Exit event.
///
/// Output is ordered by timestamp; simultaneous events put Entry before Exit
/// and then order by observation id. Overlapping ranges are kept.
std::vector<TrajectoryEvent> split_events(std::span<const WirelessObservation> observations);

struct DiscardedObservation {
    WirelessObservation observation;
    /// The earlier observation it could not coexist with.
    std::string conflicts_with;
};

struct OverlapFilterResult {
    std::vector<WirelessObservation> kept;
    std::vector<DiscardedObservation> discarded;
};

/// Drops observations that would put the device in two places at once.
///
/// Input must be sorted by entry time. An observation is discarded when it
/// starts strictly before the previous surviving observation ends and is at a
/// different location. Same-location overlaps are kept.
OverlapFilterResult filter_impossible(std::span<const WirelessObservation> sorted);

/// Greedy segmentation: a new journey starts whenever the gap to the previous
/// event is strictly greater than `max_gap`.
std::vector<Journey> extract_journeys(std::span<const TrajectoryEvent> events, DurationMs max_gap);

enum class DiscardReason { BeforeEpochCutoff, TooFewPoints, TooShortSpan };

std::string_view to_string(DiscardReason reason);

struct FilterVerdict {
    std::optional<DiscardReason> discard;

    bool keep() const { return !discard.has_value(); }
};

/// Whole-trajectory validity filters, reported in the order: timestamp
/// cutoff, point count, time span.
FilterVerdict apply_trajectory_filters(std::span<const TrajectoryEvent> events, const PreprocessConfig& config);

/// Everything the preprocessing stage knows about one device.
struct PreprocessedTrajectory {
    std::string device_id;
    std::vector<TrajectoryEvent> events;
    std::vector<Journey> journeys;
    std::vector<DiscardedObservation> discarded_observations;
    FilterVerdict verdict;
};

/// Sort, overlap filter, split, trajectory filters, journey extraction.
/// Journeys are only extracted for trajectories that pass the filters.
PreprocessedTrajectory preprocess_device(std::string device_id, std::vector<WirelessObservation> observations,
                                         const PreprocessConfig& config);

}  // namespace wtraj
