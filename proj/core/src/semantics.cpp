#include "wtraj/semantics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace wtraj {

std::vector<OfflineRestLocation> detect_orls(std::span<const TrajectoryEvent> events, DurationMs min_rest,
                                             RestPairing pairing) {
    std::map<std::string, std::vector<DurationMs>> rests;
    if (pairing == RestPairing::Adjacent) {
        for (std::size_t i = 1; i < events.size(); ++i) {
            const auto& prev = events[i - 1];
            const auto& cur = events[i];
            if (prev.kind == EventKind::Exit && cur.kind == EventKind::Entry && prev.location == cur.location &&
                cur.timestamp - prev.timestamp > min_rest) {
                rests[cur.location].push_back(cur.timestamp - prev.timestamp);
            }
        }
    } else {
        std::map<std::string, const TrajectoryEvent*> last_at;
        for (const auto& cur : events) {
            auto& prev = last_at[cur.location];
            if (prev != nullptr && prev->kind == EventKind::Exit && cur.kind == EventKind::Entry &&
                cur.timestamp - prev->timestamp > min_rest) {
                rests[cur.location].push_back(cur.timestamp - prev->timestamp);
            }
            prev = &cur;
        }
    }

    std::vector<OfflineRestLocation> orls;
    orls.reserve(rests.size());
    for (auto& [location, durations] : rests) orls.push_back({location, std::move(durations), 0, 0});
    return orls;
}

void ScoringConfig::validate() const {
    auto valid = [](const HourWindow& w) { return w.begin >= 0 && w.end <= 24 && w.begin < w.end; };
    if (!valid(evening) || !valid(morning)) throw std::invalid_argument("hour windows must lie within [0, 24)");
    if (evening.begin < morning.end && morning.begin < evening.end) {
        throw std::invalid_argument("morning and evening windows overlap");
    }
    if (window_score <= 0 || duration_score <= 0 || frequency_score <= 0) {
        throw std::invalid_argument("scores must be positive");
    }
}

int modal_hour(std::span<const TimestampMs> timestamps, const TimeZone& tz) {
    if (timestamps.empty()) return -1;
    std::array<int, 24> counts{};
    for (auto t : timestamps) ++counts[static_cast<std::size_t>(tz.local_hour(t))];
    // max_element returns the first maximum, i.e. the earliest hour.
    return static_cast<int>(std::distance(counts.begin(), std::max_element(counts.begin(), counts.end())));
}

namespace {

struct HourSamples {
    std::vector<TimestampMs> departures;
    std::vector<TimestampMs> arrivals;
    std::size_t event_count = 0;
};

std::map<std::string, HourSamples> collect_samples(std::span<const TrajectoryEvent> events,
                                                   std::span<const Journey> journeys, HourEvents mode) {
    std::map<std::string, HourSamples> samples;
    for (const auto& e : events) ++samples[e.location].event_count;

    if (mode == HourEvents::All) {
        for (const auto& e : events) {
            auto& s = samples[e.location];
            (e.kind == EventKind::Exit ? s.departures : s.arrivals).push_back(e.timestamp);
        }
        return samples;
    }
    for (const auto& journey : journeys) {
        const auto& ev = journey.events();
        for (std::size_t i = 0; i < ev.size(); ++i) {
            if (ev[i].kind == EventKind::Exit && i + 1 < ev.size() && ev[i + 1].location != ev[i].location) {
                samples[ev[i].location].departures.push_back(ev[i].timestamp);
            }
            if (ev[i].kind == EventKind::Entry && i > 0 && ev[i - 1].location != ev[i].location) {
                samples[ev[i].location].arrivals.push_back(ev[i].timestamp);
            }
        }
    }
    return samples;
}

}  // namespace

std::vector<OfflineRestLocation> score_orls(std::vector<OfflineRestLocation> orls,
                                            std::span<const TrajectoryEvent> events,
                                            std::span<const Journey> journeys, const ScoringConfig& config) {
    const auto samples = collect_samples(events, journeys, config.hour_events);
    std::vector<std::size_t> event_counts(orls.size(), 0);

    for (std::size_t i = 0; i < orls.size(); ++i) {
        auto& orl = orls[i];
        orl.home_score = 0;
        orl.work_score = 0;
        const auto it = samples.find(orl.location);
        if (it == samples.end()) continue;
        event_counts[i] = it->second.event_count;

        const int depart = modal_hour(it->second.departures, config.timezone);
        const int arrive = modal_hour(it->second.arrivals, config.timezone);
        if (config.evening.contains(depart)) orl.work_score += config.window_score;
        if (config.morning.contains(arrive)) orl.work_score += config.window_score;
        if (config.evening.contains(arrive)) orl.home_score += config.window_score;
        if (config.morning.contains(depart)) orl.home_score += config.window_score;
    }

    std::vector<DurationMs> totals(orls.size());
    for (std::size_t i = 0; i < orls.size(); ++i) totals[i] = orls[i].total_rest();

    std::vector<std::size_t> order(orls.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto top = std::min<std::size_t>(2, orls.size());

    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(totals[b], event_counts[b], orls[a].location) <
               std::tie(totals[a], event_counts[a], orls[b].location);
    });
    for (std::size_t k = 0; k < top; ++k) {
        orls[order[k]].home_score += config.duration_score;
        orls[order[k]].work_score += config.duration_score;
    }

    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(event_counts[b], totals[b], orls[a].location) <
               std::tie(event_counts[a], totals[a], orls[b].location);
    });
    for (std::size_t k = 0; k < top; ++k) {
        orls[order[k]].home_score += config.frequency_score;
        orls[order[k]].work_score += config.frequency_score;
    }
    return orls;
}

LocationLabels label_home_work(std::span<const OfflineRestLocation> scored) {
    LocationLabels labels;
    if (scored.empty()) return labels;

    auto pick = [&](auto score_of, const std::string* excluded) -> const OfflineRestLocation* {
        const OfflineRestLocation* best = nullptr;
        DurationMs best_rest = 0;
        for (const auto& orl : scored) {
            if (excluded != nullptr && orl.location == *excluded) continue;
            const auto rest = orl.total_rest();
            if (best == nullptr || score_of(orl) > score_of(*best) ||
                (score_of(orl) == score_of(*best) &&
                 (rest > best_rest || (rest == best_rest && orl.location < best->location)))) {
                best = &orl;
                best_rest = rest;
            }
        }
        return best;
    };

    const auto* home = pick([](const auto& o) { return o.home_score; }, nullptr);
    labels.home = home->location;
    const auto* work = pick([](const auto& o) { return o.work_score; }, &home->location);
    if (work != nullptr) labels.work = work->location;

    for (const auto& orl : scored) labels.by_location[orl.location] = LocationLabel::OtherOrl;
    labels.by_location[*labels.home] = LocationLabel::Home;
    if (labels.work) labels.by_location[*labels.work] = LocationLabel::Work;
    return labels;
}

JourneyPatterns build_journey_string(std::span<const Journey> journeys, const LocationLabels& labels) {
    JourneyPatterns out;
    for (std::size_t j = 0; j < journeys.size(); ++j) {
        std::string pattern;
        for (const auto& loc : journeys[j].location_sequence()) pattern.push_back(token(labels.label_of(loc)));
        if (j > 0) out.journey_string.push_back('|');
        out.journey_string += pattern;
        ++out.counts[pattern];
    }
    return out;
}

std::vector<CondensedJourneyEntry> condense_journeys(std::span<const Journey> journeys, const TimeZone& tz) {
    std::vector<CondensedJourneyEntry> entries;
    std::map<std::vector<std::string>, std::size_t> index;
    for (const auto& journey : journeys) {
        const auto& route = journey.location_sequence();
        auto [it, inserted] = index.try_emplace(route, entries.size());
        if (inserted) entries.push_back({route, 0, 0});
        auto& entry = entries[it->second];
        if (tz.local_hour(journey.start_time()) < 12) {
            ++entry.am_count;
        } else {
            ++entry.pm_count;
        }
    }
    // Entries are already in first-occurrence order.
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.total() > b.total(); });
    return entries;
}

}  // namespace wtraj
