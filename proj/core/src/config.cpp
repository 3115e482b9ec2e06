#include "wtraj/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "config_json.hpp"
#include "json_codec.hpp"

namespace wtraj {

void PipelineConfig::validate() const {
    preprocess.validate();
    dbscan.validate();
    if (max_num_trajectories < 1) throw std::invalid_argument("MAX_NUM_TRAJECTORIES must be at least 1");
    if (time_zone.empty()) throw std::invalid_argument("TIME_ZONE must not be empty");
}

ScoringConfig PipelineConfig::scoring() const {
    ScoringConfig s;
    s.timezone = TimeZone::load(time_zone);
    return s;
}

bool PipelineConfig::operator==(const PipelineConfig& o) const {
    const auto& a = preprocess;
    const auto& b = o.preprocess;
    return a.max_gap_in_journey == b.max_gap_in_journey && a.min_rest_for_orl == b.min_rest_for_orl &&
           a.min_trajectory_length == b.min_trajectory_length && a.min_days_data == b.min_days_data &&
           a.earliest_valid_timestamp == b.earliest_valid_timestamp &&
           max_num_trajectories == o.max_num_trajectories && dbscan.eps == o.dbscan.eps &&
           dbscan.min_pts == o.dbscan.min_pts && time_zone == o.time_zone && seed == o.seed;
}

namespace {

template <class T>
T typed(const Json& v, const std::string& key) {
    const bool ok = std::is_floating_point_v<T> ? v.is_number()
                    : std::is_same_v<T, std::string> ? v.is_string()
                    : std::is_unsigned_v<T>          ? v.is_number_unsigned()
                                                     : v.is_number_integer();
    if (!ok) throw std::invalid_argument("config key " + key + " has the wrong type");
    return v.get<T>();
}

}  // namespace

Json config_encode(const PipelineConfig& c) {
    return {{"MAX_TIME_BETWEEN_POINTS_IN_JOURNEY", c.preprocess.max_gap_in_journey},
            {"MIN_TIME_FOR_ORL", c.preprocess.min_rest_for_orl},
            {"MIN_TRAJECTORY_LENGTH", c.preprocess.min_trajectory_length},
            {"MAX_NUM_TRAJECTORIES", c.max_num_trajectories},
            {"EARLIEST_VALID_TIMESTAMP", c.preprocess.earliest_valid_timestamp},
            {"MIN_NUM_DAYS_DATA_FOR_VALID_TRAJ", c.preprocess.min_days_data},
            {"MinPts", c.dbscan.min_pts},
            {"Eps", c.dbscan.eps},
            {"TIME_ZONE", c.time_zone},
            {"SEED", c.seed}};
}

PipelineConfig config_decode(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    PipelineConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "MAX_TIME_BETWEEN_POINTS_IN_JOURNEY") {
            c.preprocess.max_gap_in_journey = typed<DurationMs>(v, key);
        } else if (key == "MIN_TIME_FOR_ORL") {
            c.preprocess.min_rest_for_orl = typed<DurationMs>(v, key);
        } else if (key == "MIN_TRAJECTORY_LENGTH") {
            c.preprocess.min_trajectory_length = typed<int>(v, key);
        } else if (key == "MAX_NUM_TRAJECTORIES") {
            c.max_num_trajectories = typed<std::size_t>(v, key);
        } else if (key == "EARLIEST_VALID_TIMESTAMP") {
            c.preprocess.earliest_valid_timestamp = typed<TimestampMs>(v, key);
        } else if (key == "MIN_NUM_DAYS_DATA_FOR_VALID_TRAJ") {
            c.preprocess.min_days_data = typed<int>(v, key);
        } else if (key == "MinPts") {
            c.dbscan.min_pts = typed<std::size_t>(v, key);
        } else if (key == "Eps") {
            c.dbscan.eps = typed<double>(v, key);
        } else if (key == "TIME_ZONE") {
            c.time_zone = typed<std::string>(v, key);
        } else if (key == "SEED") {
            c.seed = typed<std::uint64_t>(v, key);
        } else {
            throw std::invalid_argument("unknown config key: " + key);
        }
    }
    c.validate();
    return c;
}

PipelineConfig parse_config(std::string_view json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    return config_decode(j);
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const PipelineConfig& config) { return dump_document(config_encode(config)); }

}  // namespace wtraj
