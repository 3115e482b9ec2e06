#pragma once

#include <span>
#include <string>
#include <vector>

#include "wtraj/model.hpp"
#include "wtraj/timezone.hpp"

namespace wtraj {

/// Which Exit/Entry pairs count as a rest at a location.
enum class RestPairing {
    /// The Exit at L is immediately followed in the trajectory by an Entry at L.
    Adjacent,
    /// The next event at L after the Exit is an Entry, whatever happened in between.
    SameLocation,
};

/// Rests are gaps strictly longer than `min_rest`. Output is ordered by location.
std::vector<OfflineRestLocation> detect_orls(std::span<const TrajectoryEvent> events, DurationMs min_rest,
                                             RestPairing pairing = RestPairing::Adjacent);

/// Half-open local hour range [begin, end).
struct HourWindow {
    int begin = 0;
    int end = 0;

    bool contains(int hour) const { return hour >= begin && hour < end; }
};

/// Which events feed the modal departure/arrival hour of a location.
enum class HourEvents {
    /// Exits that leave L for another location within the same journey, and
    /// Entries that arrive at L from another location within the same journey.
    Transitions,
    /// Every Exit and every Entry at L.
    All,
};

struct ScoringConfig {
    HourWindow evening{17, 21};
    HourWindow morning{5, 10};
    int window_score = 3;
    int duration_score = 2;
    int frequency_score = 2;
    TimeZone timezone = TimeZone::utc();
    HourEvents hour_events = HourEvents::Transitions;

    /// Throws std::invalid_argument on overlapping windows or non-positive scores.
    void validate() const;
};

/// Most frequent local hour; ties go to the earliest hour. -1 for no timestamps.
int modal_hour(std::span<const TimestampMs> timestamps, const TimeZone& tz);

/// Populates home_score and work_score.
///
/// Window rules per ORL: work +3 for a modal departure hour in the evening
/// window and +3 for a modal arrival hour in the morning window; home +3 for a
/// modal arrival in the evening and +3 for a modal departure in the morning.
/// The two ORLs with the largest summed rest and the two with the most events
/// each get +2 on both scores.
std::vector<OfflineRestLocation> score_orls(std::vector<OfflineRestLocation> orls,
                                            std::span<const TrajectoryEvent> events,
                                            std::span<const Journey> journeys, const ScoringConfig& config);

/// Home is the highest home score; Work the highest work score among the rest.
/// Ties go to the larger summed rest, then the smaller location name.
LocationLabels label_home_work(std::span<const OfflineRestLocation> scored);

struct JourneyPatterns {
    std::string journey_string;  ///< e.g. "H|HW|WUH"
    PatternCounts counts;
};

JourneyPatterns build_journey_string(std::span<const Journey> journeys, const LocationLabels& labels);

struct CondensedJourneyEntry {
    std::vector<std::string> route;
    int am_count = 0;
    int pm_count = 0;

    int total() const { return am_count + pm_count; }
    bool operator==(const CondensedJourneyEntry&) const = default;
};

/// Groups journeys by route. A journey starting before local noon is AM.
/// Sorted by total count descending, then by first occurrence.
std::vector<CondensedJourneyEntry> condense_journeys(std::span<const Journey> journeys, const TimeZone& tz);

}  // namespace wtraj
