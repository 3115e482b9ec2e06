#include "wtraj/model.hpp"

#include <numeric>
#include <stdexcept>

namespace wtraj {

std::string_view to_string(BeaconKind kind) {
    return kind == BeaconKind::Wap ? "WAP" : "BLE";
}

std::optional<BeaconKind> parse_beacon_kind(std::string_view text) {
    if (text == "WAP" || text == "wap") return BeaconKind::Wap;
    if (text == "BLE" || text == "ble") return BeaconKind::Ble;
    return std::nullopt;
}

std::string_view to_string(ObservationIssue issue) {
    switch (issue) {
    case ObservationIssue::EntryAfterExit: return "entry_after_exit";
    case ObservationIssue::EmptyLocation: return "empty_location";
    case ObservationIssue::BeforeEarliestTimestamp: return "before_earliest_timestamp";
    }
    return "unknown";
}

ObservationVerdict validate_observation(const WirelessObservation& obs, TimestampMs earliest_valid) {
    if (obs.entry_time > obs.exit_time) return {ObservationIssue::EntryAfterExit};
    if (obs.location.empty()) return {ObservationIssue::EmptyLocation};
    if (obs.entry_time < earliest_valid) return {ObservationIssue::BeforeEarliestTimestamp};
    return {};
}

std::string_view to_string(EventKind kind) {
    return kind == EventKind::Entry ? "entry" : "exit";
}

Journey::Journey(std::vector<TrajectoryEvent> events, DurationMs max_gap)
    : events_(std::move(events)) {
    if (events_.empty()) throw std::invalid_argument("journey must contain at least one event");
    for (std::size_t i = 1; i < events_.size(); ++i) {
        const auto gap = events_[i].timestamp - events_[i - 1].timestamp;
        if (gap < 0) throw std::invalid_argument("journey events out of chronological order");
        if (gap > max_gap) throw std::invalid_argument("journey gap exceeds the maximum");
    }
    for (const auto& e : events_) {
        if (locations_.empty() || locations_.back() != e.location) locations_.push_back(e.location);
    }
}

DurationMs OfflineRestLocation::total_rest() const {
    return std::accumulate(rest_durations.begin(), rest_durations.end(), DurationMs{0});
}

char token(LocationLabel label) {
    switch (label) {
    case LocationLabel::Home: return 'H';
    case LocationLabel::Work: return 'W';
    case LocationLabel::OtherOrl: return 'O';
    case LocationLabel::Unknown: return 'U';
    }
    return 'U';
}

std::optional<LocationLabel> label_from_token(char t) {
    switch (t) {
    case 'H': return LocationLabel::Home;
    case 'W': return LocationLabel::Work;
    case 'O': return LocationLabel::OtherOrl;
    case 'U': return LocationLabel::Unknown;
    default: return std::nullopt;
    }
}

LocationLabel LocationLabels::label_of(const std::string& location) const {
    auto it = by_location.find(location);
    return it == by_location.end() ? LocationLabel::Unknown : it->second;
}

}  // namespace wtraj
