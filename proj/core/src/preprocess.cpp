#include "wtraj/preprocess.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace wtraj {

void PreprocessConfig::validate() const {
    if (max_gap_in_journey <= 0) throw std::invalid_argument("MAX_TIME_BETWEEN_POINTS_IN_JOURNEY must be positive");
    if (min_rest_for_orl <= 0) throw std::invalid_argument("MIN_TIME_FOR_ORL must be positive");
    if (min_trajectory_length <= 0) throw std::invalid_argument("MIN_TRAJECTORY_LENGTH must be positive");
    if (min_days_data <= 0) throw std::invalid_argument("MIN_NUM_DAYS_DATA_FOR_VALID_TRAJ must be positive");
    if (earliest_valid_timestamp <= 0) throw std::invalid_argument("EARLIEST_VALID_TIMESTAMP must be positive");
}

void sort_observations(std::vector<WirelessObservation>& observations) {
    std::sort(observations.begin(), observations.end(), [](const auto& a, const auto& b) {
        return std::tie(a.entry_time, a.exit_time, a.observation_id) <
               std::tie(b.entry_time, b.exit_time, b.observation_id);
    });
}

std::vector<TrajectoryEvent> split_events(std::span<const WirelessObservation> observations) {
    std::vector<TrajectoryEvent> events;
    events.reserve(observations.size() * 2);
    for (const auto& obs : observations) {
        events.push_back({obs.observation_id, EventKind::Entry, obs.location, obs.entry_time});
        events.push_back({obs.observation_id, EventKind::Exit, obs.location, obs.exit_time});
    }
    // Entry sorts before Exit because of enum order.
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        return std::tie(a.timestamp, a.kind, a.source_observation_id) <
               std::tie(b.timestamp, b.kind, b.source_observation_id);
    });
    return events;
}

OverlapFilterResult filter_impossible(std::span<const WirelessObservation> sorted) {
    OverlapFilterResult result;
    result.kept.reserve(sorted.size());
    for (const auto& obs : sorted) {
        if (!result.kept.empty()) {
            const auto& anchor = result.kept.back();
            if (anchor.exit_time > obs.entry_time && anchor.location != obs.location) {
                result.discarded.push_back({obs, anchor.observation_id});
                continue;
            }
        }
        result.kept.push_back(obs);
    }
    return result;
}

std::vector<Journey> extract_journeys(std::span<const TrajectoryEvent> events, DurationMs max_gap) {
    std::vector<Journey> journeys;
    std::vector<TrajectoryEvent> current;
    for (const auto& e : events) {
        if (!current.empty() && e.timestamp - current.back().timestamp > max_gap) {
            journeys.emplace_back(std::move(current), max_gap);
            current.clear();
        }
        current.push_back(e);
    }
    if (!current.empty()) journeys.emplace_back(std::move(current), max_gap);
    return journeys;
}

std::string_view to_string(DiscardReason reason) {
    switch (reason) {
    case DiscardReason::BeforeEpochCutoff: return "before_epoch_cutoff";
    case DiscardReason::TooFewPoints: return "too_few_points";
    case DiscardReason::TooShortSpan: return "too_short_span";
    }
    return "unknown";
}

FilterVerdict apply_trajectory_filters(std::span<const TrajectoryEvent> events, const PreprocessConfig& config) {
    const bool pre_cutoff = std::any_of(events.begin(), events.end(), [&](const auto& e) {
        return e.timestamp < config.earliest_valid_timestamp;
    });
    if (pre_cutoff) return {DiscardReason::BeforeEpochCutoff};
    if (events.size() < static_cast<std::size_t>(config.min_trajectory_length)) return {DiscardReason::TooFewPoints};

    const auto [lo, hi] = std::minmax_element(events.begin(), events.end(),
                                              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    if (hi->timestamp - lo->timestamp < static_cast<DurationMs>(config.min_days_data) * kMsPerDay) {
        return {DiscardReason::TooShortSpan};
    }
    return {};
}

PreprocessedTrajectory preprocess_device(std::string device_id, std::vector<WirelessObservation> observations,
                                         const PreprocessConfig& config) {
    PreprocessedTrajectory out;
    out.device_id = std::move(device_id);
    sort_observations(observations);
    auto filtered = filter_impossible(observations);
    out.discarded_observations = std::move(filtered.discarded);
    out.events = split_events(filtered.kept);
    out.verdict = apply_trajectory_filters(out.events, config);
    if (out.verdict.keep()) out.journeys = extract_journeys(out.events, config.max_gap_in_journey);
    return out;
}

}  // namespace wtraj
