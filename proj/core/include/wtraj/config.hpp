#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "wtraj/cluster.hpp"
#include "wtraj/preprocess.hpp"
#include "wtraj/semantics.hpp"

namespace wtraj {

/// Run parameters. The JSON form uses exactly these keys:
///
///   MAX_TIME_BETWEEN_POINTS_IN_JOURNEY  ms
///   MIN_TIME_FOR_ORL                    ms
///   MIN_TRAJECTORY_LENGTH               events
///   MAX_NUM_TRAJECTORIES                trajectories
///   EARLIEST_VALID_TIMESTAMP            ms since the Unix epoch
///   MIN_NUM_DAYS_DATA_FOR_VALID_TRAJ    days
///   MinPts, Eps                         DBSCAN
///   TIME_ZONE                           IANA name
///   SEED                                sampling seed
struct PipelineConfig {
    PreprocessConfig preprocess;
    std::size_t max_num_trajectories = 10'000;
    DbscanParams dbscan;
    std::string time_zone = "Europe/London";
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;

    /// Scoring defaults in this run's time zone. Loads the zone.
    ScoringConfig scoring() const;

    bool operator==(const PipelineConfig& other) const;
};

/// Strict parse: unknown keys and wrongly typed values are errors. Missing
/// keys keep their defaults. Throws std::invalid_argument.
PipelineConfig parse_config(std::string_view json_text);

/// Throws std::runtime_error when the file cannot be read.
PipelineConfig load_config(const std::filesystem::path& path);

/// Every key, pretty-printed, newline-terminated.
std::string config_to_json(const PipelineConfig& config);

}  // namespace wtraj
