#include "wtraj/serialization.hpp"

#include <limits>
#include <stdexcept>

#include "json_codec.hpp"

namespace wtraj {

namespace {

template <class T>
T required(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field: ") + key);
    return j.at(key).get<T>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
}

Json optional_json(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json encode(const WirelessObservation& v) {
    return {{"device_id", v.device_id},   {"observation_id", v.observation_id},
            {"beacon_id", v.beacon_id},   {"beacon_kind", std::string(to_string(v.beacon_kind))},
            {"region_id", v.region_id},   {"location", v.location},
            {"entry_ms", v.entry_time},   {"exit_ms", v.exit_time},
            {"phone_model", v.phone_model}};
}

void decode(const Json& j, WirelessObservation& v) {
    v.device_id = required<std::string>(j, "device_id");
    v.observation_id = required<std::string>(j, "observation_id");
    v.beacon_id = required<std::string>(j, "beacon_id");
    const auto kind = parse_beacon_kind(required<std::string>(j, "beacon_kind"));
    if (!kind) throw std::invalid_argument("bad beacon_kind");
    v.beacon_kind = *kind;
    v.region_id = required<std::string>(j, "region_id");
    v.location = required<std::string>(j, "location");
    v.entry_time = required<TimestampMs>(j, "entry_ms");
    v.exit_time = required<TimestampMs>(j, "exit_ms");
    v.phone_model = j.contains("phone_model") ? j.at("phone_model").get<std::string>() : std::string{};
}

Json encode(const TrajectoryEvent& v) {
    return {{"observation_id", v.source_observation_id},
            {"kind", std::string(to_string(v.kind))},
            {"location", v.location},
            {"timestamp_ms", v.timestamp}};
}

void decode(const Json& j, TrajectoryEvent& v) {
    v.source_observation_id = required<std::string>(j, "observation_id");
    const auto kind = required<std::string>(j, "kind");
    if (kind != "entry" && kind != "exit") throw std::invalid_argument("bad event kind: " + kind);
    v.kind = kind == "entry" ? EventKind::Entry : EventKind::Exit;
    v.location = required<std::string>(j, "location");
    v.timestamp = required<TimestampMs>(j, "timestamp_ms");
}

Json encode(const Journey& v) {
    Json events = Json::array();
    for (const auto& e : v.events()) events.push_back(encode(e));
    return {{"events", std::move(events)}};
}

void decode(const Json& j, Journey& v) {
    std::vector<TrajectoryEvent> events;
    for (const auto& e : required<Json>(j, "events")) decode(e, events.emplace_back());
    v = Journey(std::move(events), std::numeric_limits<DurationMs>::max());
}

Json encode(const OfflineRestLocation& v) {
    return {{"location", v.location},
            {"rest_durations_ms", v.rest_durations},
            {"home_score", v.home_score},
            {"work_score", v.work_score}};
}

void decode(const Json& j, OfflineRestLocation& v) {
    v.location = required<std::string>(j, "location");
    v.rest_durations = required<std::vector<DurationMs>>(j, "rest_durations_ms");
    v.home_score = required<int>(j, "home_score");
    v.work_score = required<int>(j, "work_score");
}

Json encode(const LocationLabels& v) {
    Json by = Json::object();
    for (const auto& [loc, label] : v.by_location) by[loc] = std::string(1, token(label));
    return {{"home", optional_json(v.home)}, {"work", optional_json(v.work)}, {"by_location", std::move(by)}};
}

void decode(const Json& j, LocationLabels& v) {
    v.home = optional_string(j, "home");
    v.work = optional_string(j, "work");
    v.by_location.clear();
    const auto by = required<Json>(j, "by_location");
    for (const auto& [loc, tok] : by.items()) {
        const auto s = tok.get<std::string>();
        const auto label = s.size() == 1 ? label_from_token(s[0]) : std::nullopt;
        if (!label) throw std::invalid_argument("bad label token: " + s);
        v.by_location.emplace(loc, *label);
    }
}

Json encode(const FeatureVector& v) {
    Json j = Json::object();
    const auto values = v.values();
    for (std::size_t i = 0; i < values.size(); ++i) j[std::string(kFeatureNames[i])] = values[i];
    return j;
}

void decode(const Json& j, FeatureVector& v) {
    std::array<double, FeatureVector::kSize> values{};
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = required<double>(j, kFeatureNames[i].data());
    v = FeatureVector::from_values(values);
}

Json encode(const ConsumerProfile& v) {
    Json journeys = Json::array();
    for (const auto& x : v.journeys) journeys.push_back(encode(x));
    Json orls = Json::array();
    for (const auto& x : v.orls) orls.push_back(encode(x));
    return {{"device_id", v.device_id},     {"journeys", std::move(journeys)}, {"orls", std::move(orls)},
            {"labels", encode(v.labels)},   {"pattern_counts", v.pattern_counts},
            {"features", encode(v.features)}};
}

void decode(const Json& j, ConsumerProfile& v) {
    v.device_id = required<std::string>(j, "device_id");
    v.journeys.clear();
    for (const auto& x : required<Json>(j, "journeys")) decode(x, v.journeys.emplace_back());
    v.orls.clear();
    for (const auto& x : required<Json>(j, "orls")) decode(x, v.orls.emplace_back());
    decode(required<Json>(j, "labels"), v.labels);
    v.pattern_counts = required<PatternCounts>(j, "pattern_counts");
    decode(required<Json>(j, "features"), v.features);
}

Json encode(const ScalerParams& v) {
    Json j = Json::object();
    for (std::size_t i = 0; i < FeatureVector::kSize; ++i) {
        j[std::string(kFeatureNames[i])] = {{"min", v.min[i]}, {"max", v.max[i]}};
    }
    return j;
}

void decode(const Json& j, ScalerParams& v) {
    for (std::size_t i = 0; i < FeatureVector::kSize; ++i) {
        const auto& f = required<Json>(j, kFeatureNames[i].data());
        v.min[i] = required<double>(f, "min");
        v.max[i] = required<double>(f, "max");
    }
}

Json encode(const AgentTruth& v) {
    return {{"device_id", v.device_id},
            {"archetype", std::string(to_string(v.archetype))},
            {"home", optional_json(v.home)},
            {"work", optional_json(v.work)},
            {"planned_route", v.planned_route},
            {"rest_places", v.rest_places},
            {"observed_trips", v.observed_trips}};
}

void decode(const Json& j, AgentTruth& v) {
    v.device_id = required<std::string>(j, "device_id");
    const auto a = parse_archetype(required<std::string>(j, "archetype"));
    if (!a) throw std::invalid_argument("bad archetype");
    v.archetype = *a;
    v.home = optional_string(j, "home");
    v.work = optional_string(j, "work");
    v.planned_route = required<std::vector<std::string>>(j, "planned_route");
    v.rest_places = required<std::vector<std::string>>(j, "rest_places");
    v.observed_trips = required<std::vector<std::vector<std::string>>>(j, "observed_trips");
}

Json encode(const GroundTruthManifest& v) {
    Json agents = Json::array();
    for (const auto& a : v.agents) agents.push_back(encode(a));
    return {{"seed", v.seed}, {"agents", std::move(agents)}};
}

void decode(const Json& j, GroundTruthManifest& v) {
    v.seed = required<std::uint64_t>(j, "seed");
    v.agents.clear();
    for (const auto& a : required<Json>(j, "agents")) decode(a, v.agents.emplace_back());
}

std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

namespace {

template <class T>
std::string to_text(const T& v) {
    return encode(v).dump();
}

template <class T>
T from_text(std::string_view text) {
    try {
        T v{};
        decode(Json::parse(text), v);
        return v;
    } catch (const Json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

}  // namespace

std::string to_json(const WirelessObservation& value) { return to_text(value); }
std::string to_json(const TrajectoryEvent& value) { return to_text(value); }
std::string to_json(const Journey& value) { return to_text(value); }
std::string to_json(const OfflineRestLocation& value) { return to_text(value); }
std::string to_json(const LocationLabels& value) { return to_text(value); }
std::string to_json(const FeatureVector& value) { return to_text(value); }
std::string to_json(const ConsumerProfile& value) { return to_text(value); }
std::string to_json(const ScalerParams& value) { return to_text(value); }
std::string to_json(const GroundTruthManifest& value) { return to_text(value); }

template <> WirelessObservation from_json<WirelessObservation>(std::string_view t) { return from_text<WirelessObservation>(t); }
template <> TrajectoryEvent from_json<TrajectoryEvent>(std::string_view t) { return from_text<TrajectoryEvent>(t); }
template <> Journey from_json<Journey>(std::string_view t) { return from_text<Journey>(t); }
template <> OfflineRestLocation from_json<OfflineRestLocation>(std::string_view t) { return from_text<OfflineRestLocation>(t); }
template <> LocationLabels from_json<LocationLabels>(std::string_view t) { return from_text<LocationLabels>(t); }
template <> FeatureVector from_json<FeatureVector>(std::string_view t) { return from_text<FeatureVector>(t); }
template <> ConsumerProfile from_json<ConsumerProfile>(std::string_view t) { return from_text<ConsumerProfile>(t); }
template <> ScalerParams from_json<ScalerParams>(std::string_view t) { return from_text<ScalerParams>(t); }
template <> GroundTruthManifest from_json<GroundTruthManifest>(std::string_view t) { return from_text<GroundTruthManifest>(t); }

}  // namespace wtraj
