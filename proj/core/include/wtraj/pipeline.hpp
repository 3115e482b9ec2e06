#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wtraj/cluster.hpp"
#include "wtraj/config.hpp"
#include "wtraj/features.hpp"
#include "wtraj/ingest.hpp"
#include "wtraj/model.hpp"
#include "wtraj/preprocess.hpp"
#include "wtraj/reduce.hpp"
#include "wtraj/semantics.hpp"

namespace wtraj {

/// A failure inside one pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message)
        : std::runtime_error(message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Everything derived for one filter-passing trajectory.
struct ConsumerReport {
    ConsumerProfile profile;
    std::string journey_string;
    std::vector<CondensedJourneyEntry> condensed;
};

/// ORLs, labels, journey patterns, condensed journeys and features.
ConsumerReport analyse_trajectory(const PreprocessedTrajectory& trajectory, const ScoringConfig& scoring,
                                  DurationMs min_rest_for_orl);

/// Preprocesses every device, in device id order.
std::vector<PreprocessedTrajectory> preprocess_all(const ObservationsByDevice& devices,
                                                   const PreprocessConfig& config);

/// Uniform draw of min(count, limit) indices without replacement, ascending.
std::vector<std::size_t> sample_indices(std::size_t count, std::size_t limit, std::uint64_t seed);

/// One row per consumer, columns in FeatureVector order.
Eigen::MatrixXd feature_matrix(const std::vector<ConsumerProfile>& profiles);

struct TrajectoryRecord {
    std::string device_id;
    std::size_t event_count = 0;
    std::optional<DiscardReason> discard;
    bool sampled = false;
};

struct PipelineResult {
    PipelineConfig config;
    /// Every ingested device, in id order.
    std::vector<TrajectoryRecord> trajectories;
    std::vector<DiscardedObservation> discarded_observations;
    /// Filter-passing consumers, in id order.
    std::vector<ConsumerReport> consumers;
    /// Indices into `consumers` of the clustered sample, ascending.
    std::vector<std::size_t> sample;
    ScalerParams scaler;
    /// Over the sample, in sample order.
    ClusterAssignment assignment;
    /// Present when the sample has at least two consumers.
    std::optional<Normalized> normalized;
    std::optional<PcaModel> pca;
    Eigen::MatrixXd projection;

    std::vector<ConsumerProfile> sampled_profiles() const;
};

/// Filter, sample, label, featurise, cluster and project.
/// Throws StageError naming the stage that failed.
PipelineResult run_pipeline(const ObservationsByDevice& devices, const PipelineConfig& config);

/// Where a run's observations came from, recorded in the manifest.
struct RunInput {
    std::filesystem::path path;
    InputFormat format = InputFormat::Csv;
    std::string fingerprint;
    std::size_t rejected_rows = 0;
};

/// Ingests the input and runs the pipeline. Rejected rows are kept in `rejects`.
struct RunOutcome {
    RunInput input;
    std::vector<RejectedRow> rejects;
    PipelineResult result;
};

RunOutcome run_from_input(const std::filesystem::path& input, InputFormat format, const PipelineConfig& config);

/// Re-runs the pipeline described by a manifest. The input file must still
/// match the recorded fingerprint.
RunOutcome run_from_manifest(const std::filesystem::path& manifest_path);

/// Writes manifest.json, consumers.json, trajectories.csv, rejects.csv,
/// discarded_observations.csv, features.csv, scaler.json, assignment.csv,
/// pca.json, chart.csv and chart.svg. Contents depend only on the inputs, so
/// identical runs produce identical directories.
void write_run_directory(const RunOutcome& outcome, const std::filesystem::path& out_dir);

}  // namespace wtraj
