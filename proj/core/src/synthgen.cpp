#include "wtraj/synthgen.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "wtraj/timezone.hpp"

namespace wtraj {

std::string_view to_string(Archetype archetype) {
    switch (archetype) {
    case Archetype::RegularCommuter: return "regular-commuter";
    case Archetype::MultiLegCommuter: return "multi-leg-commuter";
    case Archetype::ShiftWorker: return "shift-worker";
    case Archetype::SporadicTraveller: return "sporadic-traveller";
    }
    return "unknown";
}

std::optional<Archetype> parse_archetype(std::string_view text) {
    for (auto a : {Archetype::RegularCommuter, Archetype::MultiLegCommuter, Archetype::ShiftWorker,
                   Archetype::SporadicTraveller}) {
        if (to_string(a) == text) return a;
    }
    return std::nullopt;
}

std::vector<std::string> default_station_names(std::size_t count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        char buf[24];
        std::snprintf(buf, sizeof buf, "S%03zu", i);
        names.emplace_back(buf);
    }
    return names;
}

namespace {

std::chrono::sys_days parse_date(const std::string& text) {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
        throw std::invalid_argument("start_date must be YYYY-MM-DD: " + text);
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) throw std::invalid_argument("start_date is not a calendar date: " + text);
    return std::chrono::sys_days{ymd};
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void SynthConfig::validate() const {
    if (!is_probability(event_dropout_prob) || !is_probability(missing_exit_prob) ||
        !is_probability(blackspot_gap_prob) || !is_probability(ble_overlap_prob)) {
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    }
    if (days < 1) throw std::invalid_argument("days must be at least 1");
    if (max_blackspot_gap < kMsPerMinute || max_blackspot_gap >= 30 * kMsPerMinute) {
        throw std::invalid_argument("max_blackspot_gap must be at least one minute and under 30 minutes");
    }
    if (min_intermediate_stops < 0 || max_intermediate_stops < min_intermediate_stops) {
        throw std::invalid_argument("invalid intermediate stop range");
    }
    const std::set<std::string> unique(stations.begin(), stations.end());
    if (unique.size() != stations.size()) throw std::invalid_argument("station names must be unique");
    if (unique.count("") != 0) throw std::invalid_argument("station names must be non-empty");
    if (stations.size() < static_cast<std::size_t>(max_intermediate_stops) + 3 || stations.size() < 6) {
        throw std::invalid_argument("station universe too small for the configured routes");
    }
    parse_date(start_date);
}

namespace {

struct Visit {
    std::string station;
    TimestampMs arrive = 0;
    TimestampMs depart = 0;
    DurationMs hole_offset = 0;  // from arrive
    DurationMs hole_length = 0;
};

using Trip = std::vector<Visit>;

struct NoiseModel {
    double dropout = 0.0;
    double missing_exit = 0.0;
    double blackspot = 0.0;
    DurationMs max_blackspot_gap = 20 * kMsPerMinute;
    double ble_overlap = 0.25;
    /// Stations eligible for dropout; all when empty.
    std::function<bool(const std::string&)> droppable;
    /// Stations eligible for the missing-exit merge; all when empty.
    std::function<bool(const std::string&)> quirk_allowed;
};

struct RawObservation {
    std::string station;
    TimestampMs entry = 0;
    TimestampMs exit = 0;
    BeaconKind kind = BeaconKind::Wap;
    std::size_t trip = 0;
    std::size_t exit_trip = 0;
};

class AgentSim {
public:
    AgentSim(const TimeZone& tz, std::chrono::sys_days day0, std::uint64_t seed, std::uint64_t index,
             NoiseModel noise)
        : tz_(tz), day0_(day0), noise_(std::move(noise)) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        rng_.seed(seq);
    }

    std::mt19937_64& rng() { return rng_; }
    void set_dropout_filter(std::function<bool(const std::string&)> droppable) { noise_.droppable = std::move(droppable); }
    void set_quirk_filter(std::function<bool(const std::string&)> allowed) { noise_.quirk_allowed = std::move(allowed); }

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    bool chance(double p) { return p > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

    /// UTC instant of a local wall-clock minute on simulation day `day`.
    TimestampMs local(int day, std::int64_t minute) const {
        const auto local_midnight = static_cast<TimestampMs>((day0_ + std::chrono::days{day}).time_since_epoch().count()) * kMsPerDay;
        return tz_.from_local(local_midnight + minute * kMsPerMinute);
    }

    /// 0 = Sunday.
    unsigned weekday(int day) const {
        return std::chrono::weekday{day0_ + std::chrono::days{day}}.c_encoding();
    }
    bool is_workday(int day) const { return weekday(day) >= 1 && weekday(day) <= 5; }

    std::vector<std::string> pick(const std::vector<std::string>& universe, std::size_t count,
                                  std::set<std::string>& used) {
        std::vector<std::string> out;
        while (out.size() < count) {
            const auto& s = universe[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(universe.size()) - 1))];
            if (used.insert(s).second) out.push_back(s);
        }
        return out;
    }

    /// A ride that leaves the first station at `depart_first`.
    Trip& ride(const std::vector<std::string>& route, TimestampMs depart_first) {
        Trip trip;
        for (std::size_t i = 0; i < route.size(); ++i) {
            Visit v;
            v.station = route[i];
            const DurationMs dwell = uniform(90, i == 0 || i + 1 == route.size() ? 360 : 240) * kMsPerSecond;
            if (chance(noise_.blackspot)) {
                v.hole_length = uniform(kMsPerMinute, noise_.max_blackspot_gap);
                v.hole_offset = dwell / 2;
            }
            if (i == 0) {
                v.depart = depart_first;
                v.arrive = depart_first - dwell - v.hole_length;
            } else {
                v.arrive = trip.back().depart + uniform(180, 480) * kMsPerSecond;
                v.depart = v.arrive + dwell + v.hole_length;
            }
            trip.push_back(std::move(v));
        }
        trips_.push_back(std::move(trip));
        return trips_.back();
    }

    /// Observations plus the surviving station sequence of each trip.
    std::pair<std::vector<WirelessObservation>, std::vector<std::vector<std::string>>> emit(
        const std::string& device_id) {
        std::vector<RawObservation> raw;
        for (std::size_t t = 0; t < trips_.size(); ++t) {
            for (const auto& v : trips_[t]) {
                std::vector<RawObservation> parts;
                if (v.hole_length > 0) {
                    const auto hole_start = v.arrive + v.hole_offset;
                    parts.push_back({v.station, v.arrive, hole_start, BeaconKind::Wap, t, t});
                    parts.push_back({v.station, hole_start + v.hole_length, v.depart, BeaconKind::Wap, t, t});
                } else {
                    parts.push_back({v.station, v.arrive, v.depart, BeaconKind::Wap, t, t});
                }
                const auto& first = parts.front();
                if (first.exit - first.entry > 90 * kMsPerSecond && chance(noise_.ble_overlap)) {
                    parts.push_back({v.station, first.entry + uniform(5, 30) * kMsPerSecond,
                                     first.exit - uniform(5, 30) * kMsPerSecond, BeaconKind::Ble, t, t});
                }
                for (auto& p : parts) {
                    const bool eligible = !noise_.droppable || noise_.droppable(p.station);
                    if (eligible && chance(noise_.dropout)) continue;
                    raw.push_back(std::move(p));
                }
            }
        }
        std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
            return a.entry != b.entry ? a.entry < b.entry : a.exit < b.exit;
        });

        if (noise_.missing_exit > 0.0) {
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const bool eligible = !noise_.quirk_allowed || noise_.quirk_allowed(raw[i].station);
                if (!eligible || !chance(noise_.missing_exit)) continue;
                // Only merge across a stretch with no other location, so the
                // widened observation never overlaps a different station.
                for (std::size_t j = i + 1; j < raw.size(); ++j) {
                    if (raw[j].station != raw[i].station) break;
                    if (raw[j].kind == raw[i].kind && raw[j].entry > raw[i].exit) {
                        raw[i].exit = raw[j].exit;
                        raw[i].exit_trip = raw[j].exit_trip;
                        raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(j));
                        break;
                    }
                }
            }
        }

        std::vector<WirelessObservation> out;
        out.reserve(raw.size());
        // A merged observation enters in one trip and exits in a later one.
        struct Mark {
            TimestampMs at;
            std::size_t trip;
            const std::string* station;
        };
        std::vector<Mark> marks;
        marks.reserve(2 * raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto& r = raw[i];
            const auto beacon_no = std::to_string(uniform(1, 2));
            char id[32];
            std::snprintf(id, sizeof id, "-%06zu", i + 1);
            WirelessObservation obs;
            obs.device_id = device_id;
            obs.observation_id = device_id + id;
            obs.beacon_kind = r.kind;
            obs.beacon_id = r.station + (r.kind == BeaconKind::Wap ? "-WAP" : "-BLE") + beacon_no;
            obs.region_id = r.station + "-R" + beacon_no;
            obs.location = r.station;
            obs.entry_time = r.entry;
            obs.exit_time = r.exit;
            out.push_back(std::move(obs));

            marks.push_back({r.entry, r.trip, &r.station});
            if (r.exit_trip != r.trip) marks.push_back({r.exit, r.exit_trip, &r.station});
        }
        std::stable_sort(marks.begin(), marks.end(), [](const Mark& a, const Mark& b) { return a.at < b.at; });
        std::vector<std::vector<std::string>> observed(trips_.size());
        for (const auto& m : marks) {
            auto& seq = observed[m.trip];
            if (seq.empty() || seq.back() != *m.station) seq.push_back(*m.station);
        }
        std::erase_if(observed, [](const auto& s) { return s.empty(); });
        return {std::move(out), std::move(observed)};
    }

private:
    TimeZone tz_;
    std::chrono::sys_days day0_;
    NoiseModel noise_;
    std::mt19937_64 rng_;
    std::vector<Trip> trips_;
};

NoiseModel noise_from(const SynthConfig& c) {
    NoiseModel n;
    n.dropout = c.event_dropout_prob;
    n.missing_exit = c.missing_exit_prob;
    n.blackspot = c.blackspot_gap_prob;
    n.max_blackspot_gap = c.max_blackspot_gap;
    n.ble_overlap = c.ble_overlap_prob;
    return n;
}

std::vector<std::string> reversed(std::vector<std::string> v) {
    std::reverse(v.begin(), v.end());
    return v;
}

// Commuter route: home, k intermediate stops, work.
std::vector<std::string> commute_route(AgentSim& sim, const std::vector<std::string>& stations, int k,
                                       std::set<std::string>& used) {
    auto ends = sim.pick(stations, 2, used);
    auto middle = sim.pick(stations, static_cast<std::size_t>(k), used);
    std::vector<std::string> route{ends[0]};
    route.insert(route.end(), middle.begin(), middle.end());
    route.push_back(ends[1]);
    return route;
}

void set_commuter_truth(AgentTruth& truth, const std::vector<std::string>& route) {
    truth.planned_route = route;
    truth.home = route.front();
    truth.work = route.back();
}

// Weekday commute: leave home in the morning window, leave work in the evening window.
struct CommuteTimes {
    std::int64_t morning = 7 * 60;  // local minutes
    std::int64_t evening = 18 * 60;
    std::int64_t jitter = 10;
};

void commute_day(AgentSim& sim, int day, const std::vector<std::string>& route, const CommuteTimes& t,
                 bool morning = true, bool evening = true) {
    if (morning) sim.ride(route, sim.local(day, t.morning + sim.uniform(-t.jitter, t.jitter)));
    if (evening) sim.ride(reversed(route), sim.local(day, t.evening + sim.uniform(-t.jitter, t.jitter)));
}

CommuteTimes regular_times(AgentSim& sim) {
    return {sim.uniform(390, 495), sim.uniform(1035, 1125), 10};
}

void simulate_regular(AgentSim& sim, const SynthConfig& cfg, AgentTruth& truth) {
    std::set<std::string> used;
    const auto k = static_cast<int>(sim.uniform(cfg.min_intermediate_stops, cfg.max_intermediate_stops));
    const auto route = commute_route(sim, cfg.stations, k, used);
    set_commuter_truth(truth, route);
    const auto times = regular_times(sim);
    for (int d = 0; d < cfg.days; ++d) {
        if (sim.is_workday(d)) commute_day(sim, d, route, times);
    }
}

void simulate_multi_leg(AgentSim& sim, const SynthConfig& cfg, AgentTruth& truth) {
    std::set<std::string> used;
    const auto k = static_cast<int>(sim.uniform(cfg.min_intermediate_stops, cfg.max_intermediate_stops));
    const auto route = commute_route(sim, cfg.stations, k, used);
    const auto third = sim.pick(cfg.stations, 1, used).front();
    set_commuter_truth(truth, route);
    truth.rest_places = {third};
    const auto times = regular_times(sim);
    for (int d = 0; d < cfg.days; ++d) {
        if (!sim.is_workday(d)) continue;
        const bool detour = sim.chance(0.35);
        commute_day(sim, d, route, times, true, !detour);
        if (detour) {
            const auto& leg = sim.ride({route.back(), third}, sim.local(d, times.evening + sim.uniform(-10, 10)));
            const auto rest = sim.uniform(90, 180) * kMsPerMinute;
            sim.ride({third, route.front()}, leg.back().depart + rest);
        }
    }
}

void simulate_night_shift(AgentSim& sim, const SynthConfig& cfg, AgentTruth& truth) {
    std::set<std::string> used;
    const auto k = static_cast<int>(sim.uniform(cfg.min_intermediate_stops, cfg.max_intermediate_stops));
    const auto route = commute_route(sim, cfg.stations, k, used);
    set_commuter_truth(truth, route);
    const auto leave_home = sim.uniform(1230, 1290);
    const auto leave_work = sim.uniform(360, 435);
    for (int d = 0; d + 1 < cfg.days; ++d) {
        if (!sim.is_workday(d)) continue;
        sim.ride(route, sim.local(d, leave_home + sim.uniform(-10, 10)));
        sim.ride(reversed(route), sim.local(d + 1, leave_work + sim.uniform(-10, 10)));
    }
}

std::vector<std::string> random_route(AgentSim& sim, const std::vector<std::string>& stations, std::size_t max_len) {
    std::set<std::string> used;
    const auto len = static_cast<std::size_t>(sim.uniform(1, static_cast<std::int64_t>(max_len)));
    return sim.pick(stations, len, used);
}

void simulate_sporadic(AgentSim& sim, const SynthConfig& cfg, AgentTruth&) {
    const auto max_len = std::min<std::size_t>(6, cfg.stations.size());
    for (int d = 0; d < cfg.days; ++d) {
        const auto r = sim.uniform(0, 99);
        const int trips = r < 50 ? 0 : (r < 85 ? 1 : 2);
        if (trips >= 1) sim.ride(random_route(sim, cfg.stations, max_len), sim.local(d, sim.uniform(420, 839)));
        if (trips >= 2) sim.ride(random_route(sim, cfg.stations, max_len), sim.local(d, sim.uniform(900, 1319)));
    }
}

std::string device_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "agent-%05zu", index + 1);
    return buf;
}

}  // namespace

SyntheticCorpus generate(const SynthConfig& config) {
    config.validate();
    const auto tz = TimeZone::load(config.timezone);
    const auto day0 = parse_date(config.start_date);

    std::vector<Archetype> plan;
    plan.insert(plan.end(), config.agents.regular_commuters, Archetype::RegularCommuter);
    plan.insert(plan.end(), config.agents.multi_leg_commuters, Archetype::MultiLegCommuter);
    plan.insert(plan.end(), config.agents.shift_workers, Archetype::ShiftWorker);
    plan.insert(plan.end(), config.agents.sporadic_travellers, Archetype::SporadicTraveller);

    SyntheticCorpus corpus;
    corpus.manifest.seed = config.seed;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        AgentSim sim(tz, day0, config.seed, i, noise_from(config));
        AgentTruth truth;
        truth.device_id = device_name(i);
        truth.archetype = plan[i];
        switch (plan[i]) {
        case Archetype::RegularCommuter: simulate_regular(sim, config, truth); break;
        case Archetype::MultiLegCommuter: simulate_multi_leg(sim, config, truth); break;
        case Archetype::ShiftWorker: simulate_night_shift(sim, config, truth); break;
        case Archetype::SporadicTraveller: simulate_sporadic(sim, config, truth); break;
        }
        auto [observations, observed] = sim.emit(truth.device_id);
        truth.observed_trips = std::move(observed);
        if (!observations.empty()) corpus.observations.emplace(truth.device_id, std::move(observations));
        corpus.manifest.agents.push_back(std::move(truth));
    }
    return corpus;
}

std::string expected_journey_string(const AgentTruth& truth) {
    std::string out;
    for (std::size_t t = 0; t < truth.observed_trips.size(); ++t) {
        if (t > 0) out.push_back('|');
        for (const auto& s : truth.observed_trips[t]) {
            if (truth.home && s == *truth.home) {
                out.push_back('H');
            } else if (truth.work && s == *truth.work) {
                out.push_back('W');
            } else if (std::find(truth.rest_places.begin(), truth.rest_places.end(), s) != truth.rest_places.end()) {
                out.push_back('O');
            } else {
                out.push_back('U');
            }
        }
    }
    return out;
}

namespace {

constexpr int kFixtureDays = 28;

struct FixtureBuilder {
    std::string name;
    Archetype archetype = Archetype::RegularCommuter;
    NoiseModel noise;
    std::function<void(AgentSim&, AgentTruth&)> behave;
    std::optional<DiscardReason> expected_discard;
    bool documented_failure = false;
};

Fixture build_fixture(const FixtureBuilder& b, const TimeZone& tz, std::chrono::sys_days day0, std::uint64_t seed,
                      std::size_t index) {
    AgentSim sim(tz, day0, seed, index, b.noise);
    Fixture f;
    f.name = b.name;
    f.truth.device_id = "fixture-" + b.name;
    f.truth.archetype = b.archetype;
    b.behave(sim, f.truth);
    auto [observations, observed] = sim.emit(f.truth.device_id);
    f.observations = std::move(observations);
    f.truth.observed_trips = std::move(observed);
    f.expected_discard = b.expected_discard;
    f.documented_failure = b.documented_failure;
    return f;
}

}  // namespace

std::vector<Fixture> fixture_suite(std::uint64_t seed) {
    const auto tz = TimeZone::load("Europe/London");
    const auto day0 = parse_date("2018-03-05");
    const auto stations = default_station_names(50);

    NoiseModel clean;
    clean.ble_overlap = 0.25;

    std::vector<FixtureBuilder> builders;

    // Direct commuter with a holiday week and an occasional stuck exit at home.
    {
        FixtureBuilder b{"commuter-direct", Archetype::RegularCommuter, clean, {}, {}, false};
        b.noise.missing_exit = 0.08;
        b.behave = [&stations](AgentSim& sim, AgentTruth& truth) {
            std::set<std::string> used;
            const auto route = commute_route(sim, stations, 0, used);
            set_commuter_truth(truth, route);
            sim.set_quirk_filter([home = route.front()](const std::string& s) { return s == home; });
            const auto times = regular_times(sim);
            for (int d = 0; d < kFixtureDays; ++d) {
                if (d >= 7 && d < 14) continue;
                if (sim.is_workday(d)) commute_day(sim, d, route, times);
            }
        };
        builders.push_back(std::move(b));
    }
    // Few multi-location journeys: many trips are seen at one end only.
    builders.push_back({"commuter-sparse-visibility", Archetype::RegularCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            set_commuter_truth(truth, route);
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (!sim.is_workday(d)) continue;
                                for (int leg = 0; leg < 2; ++leg) {
                                    const auto full = leg == 0 ? route : reversed(route);
                                    const auto minute = (leg == 0 ? times.morning : times.evening) + sim.uniform(-10, 10);
                                    std::vector<std::string> seen = full;
                                    const auto r = sim.uniform(0, 9);
                                    if (r < 2) seen = {full.front()};
                                    if (r >= 2 && r < 4) seen = {full.back()};
                                    if (seen.size() == 1 && seen.front() == full.back()) {
                                        // Only the destination was seen: it is reached about 20 minutes later.
                                        sim.ride(seen, sim.local(d, minute + 20));
                                    } else {
                                        sim.ride(seen, sim.local(d, minute));
                                    }
                                }
                            }
                        },
                        {}, false});
    // One intermediate stop plus an extra rest place on some evenings.
    builders.push_back({"commuter-extra-orl", Archetype::MultiLegCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            const auto third = sim.pick(stations, 1, used).front();
                            set_commuter_truth(truth, route);
                            truth.rest_places = {third};
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (!sim.is_workday(d)) continue;
                                const bool detour = sim.weekday(d) == 3;
                                commute_day(sim, d, route, times, true, !detour);
                                if (detour) {
                                    const auto& leg = sim.ride({route.back(), third},
                                                               sim.local(d, times.evening + sim.uniform(-10, 10)));
                                    sim.ride({third, route.front()}, leg.back().depart + sim.uniform(100, 150) * kMsPerMinute);
                                }
                            }
                        },
                        {}, false});
    // Regular HUW / WUH commuter.
    builders.push_back({"commuter-huw", Archetype::RegularCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            set_commuter_truth(truth, route);
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (sim.is_workday(d)) commute_day(sim, d, route, times);
                            }
                        },
                        {}, false});
    // Long route where intermediate stops are only sometimes seen.
    {
        FixtureBuilder b{"commuter-partial-route", Archetype::RegularCommuter, clean, {}, {}, false};
        b.noise.dropout = 0.5;
        b.behave = [&stations](AgentSim& sim, AgentTruth& truth) {
            std::set<std::string> used;
            const auto route = commute_route(sim, stations, 3, used);
            set_commuter_truth(truth, route);
            sim.set_dropout_filter([ends = std::pair{route.front(), route.back()}](const std::string& s) {
                return s != ends.first && s != ends.second;
            });
            const auto times = regular_times(sim);
            for (int d = 0; d < kFixtureDays; ++d) {
                if (sim.is_workday(d)) commute_day(sim, d, route, times);
            }
        };
        builders.push_back(std::move(b));
    }
    // Ambiguous: irregular days, half-commutes and wide departure times.
    builders.push_back({"problematic-ambiguous", Archetype::RegularCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 2, used);
                            set_commuter_truth(truth, route);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (!sim.is_workday(d) || sim.chance(0.4)) continue;
                                const CommuteTimes t{sim.uniform(360, 560), sim.uniform(990, 1170), 0};
                                const auto r = sim.uniform(0, 9);
                                commute_day(sim, d, route, t, r != 0, r != 1);
                            }
                        },
                        {}, false});
    // A change station that is also a regular evening rest stop.
    builders.push_back({"problematic-intermediate-stop", Archetype::MultiLegCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 2, used);
                            set_commuter_truth(truth, route);
                            const auto& change = route[1];
                            truth.rest_places = {change};
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (!sim.is_workday(d)) continue;
                                const bool stop = sim.weekday(d) == 2 || sim.weekday(d) == 4;
                                commute_day(sim, d, route, times, true, !stop);
                                if (stop) {
                                    const auto& leg = sim.ride({route[3], route[2], change},
                                                               sim.local(d, times.evening + sim.uniform(-10, 10)));
                                    sim.ride({change, route[0]}, leg.back().depart + sim.uniform(90, 150) * kMsPerMinute);
                                }
                            }
                        },
                        {}, false});
    // Night shift: commute times fall in the opposite windows.
    builders.push_back({"problematic-odd-hours", Archetype::ShiftWorker, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            set_commuter_truth(truth, route);
                            const auto leave_home = sim.uniform(1230, 1290);
                            const auto leave_work = sim.uniform(360, 435);
                            for (int d = 0; d + 1 < kFixtureDays; ++d) {
                                if (!sim.is_workday(d)) continue;
                                sim.ride(route, sim.local(d, leave_home + sim.uniform(-10, 10)));
                                sim.ride(reversed(route), sim.local(d + 1, leave_work + sim.uniform(-10, 10)));
                            }
                        },
                        {}, true});
    // Less than a day of data.
    builders.push_back({"problematic-too-short", Archetype::RegularCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 2, used);
                            set_commuter_truth(truth, route);
                            commute_day(sim, 0, route, regular_times(sim));
                        },
                        DiscardReason::TooShortSpan, false});
    // Locations never repeat, so no rest location can be found.
    builders.push_back({"problematic-no-orl", Archetype::SporadicTraveller, clean,
                        [&](AgentSim& sim, AgentTruth&) {
                            std::set<std::string> used;
                            for (int d = 0; d < 5; ++d) {
                                const auto len = static_cast<std::size_t>(sim.uniform(2, 4));
                                sim.ride(sim.pick(stations, len, used), sim.local(d, sim.uniform(480, 1200)));
                            }
                        },
                        {}, false});
    // Regular commuter with heavy random loss.
    {
        FixtureBuilder b{"regular-dropout", Archetype::RegularCommuter, clean, {}, {}, false};
        b.noise.dropout = 0.3;
        b.behave = [&stations](AgentSim& sim, AgentTruth& truth) {
            std::set<std::string> used;
            const auto route = commute_route(sim, stations, 1, used);
            set_commuter_truth(truth, route);
            sim.set_dropout_filter([ends = std::pair{route.front(), route.back()}](const std::string& s) {
                return s != ends.first && s != ends.second;
            });
            const auto times = regular_times(sim);
            for (int d = 0; d < kFixtureDays; ++d) {
                if (sim.is_workday(d)) commute_day(sim, d, route, times);
            }
        };
        builders.push_back(std::move(b));
    }
    // Late shift: no window matches, the longer rest decides.
    builders.push_back({"late-shift", Archetype::ShiftWorker, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            set_commuter_truth(truth, route);
                            const CommuteTimes t{sim.uniform(660, 690), sim.uniform(1275, 1300), 5};
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (sim.is_workday(d)) commute_day(sim, d, route, t);
                            }
                        },
                        {}, false});
    // Multi-leg commuter with a detour rest place.
    builders.push_back({"multi-leg", Archetype::MultiLegCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 2, used);
                            const auto third = sim.pick(stations, 1, used).front();
                            set_commuter_truth(truth, route);
                            truth.rest_places = {third};
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (!sim.is_workday(d)) continue;
                                const bool detour = sim.chance(0.35);
                                commute_day(sim, d, route, times, true, !detour);
                                if (detour) {
                                    const auto& leg = sim.ride({route.back(), third},
                                                               sim.local(d, times.evening + sim.uniform(-10, 10)));
                                    sim.ride({third, route.front()}, leg.back().depart + sim.uniform(90, 180) * kMsPerMinute);
                                }
                            }
                        },
                        {}, false});
    // Commuter who also makes weekend leisure round trips.
    builders.push_back({"weekend-leisure", Archetype::RegularCommuter, clean,
                        [&](AgentSim& sim, AgentTruth& truth) {
                            std::set<std::string> used;
                            const auto route = commute_route(sim, stations, 1, used);
                            set_commuter_truth(truth, route);
                            const auto times = regular_times(sim);
                            for (int d = 0; d < kFixtureDays; ++d) {
                                if (sim.is_workday(d)) {
                                    commute_day(sim, d, route, times);
                                } else if (sim.weekday(d) == 6) {
                                    const auto spot = sim.pick(stations, 1, used).front();
                                    truth.rest_places.push_back(spot);
                                    const auto& out = sim.ride({route.front(), spot}, sim.local(d, sim.uniform(660, 780)));
                                    sim.ride({spot, route.front()}, out.back().depart + sim.uniform(150, 240) * kMsPerMinute);
                                }
                            }
                        },
                        {}, false});

    std::vector<Fixture> fixtures;
    fixtures.reserve(builders.size());
    for (std::size_t i = 0; i < builders.size(); ++i) fixtures.push_back(build_fixture(builders[i], tz, day0, seed, i));
    return fixtures;
}

}  // namespace wtraj
