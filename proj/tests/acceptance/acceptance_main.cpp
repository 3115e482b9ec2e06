// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "wtraj/cluster.hpp"
#include "wtraj/features.hpp"
#include "wtraj/ingest.hpp"
#include "wtraj/metric.hpp"
#include "wtraj/pipeline.hpp"
#include "wtraj/preprocess.hpp"
#include "wtraj/reduce.hpp"
#include "wtraj/routesim.hpp"
#include "wtraj/synthgen.hpp"

namespace {

using namespace wtraj;
namespace fs = std::filesystem;
using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    int number;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> run;
};

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ConsumerProfile random_profile(Rng& rng, std::size_t i) {
    static constexpr char kTokens[] = {'H', 'W', 'O', 'U'};
    ConsumerProfile p;
    p.device_id = "p" + std::to_string(i);
    const int distinct = uniform_int(rng, 0, 6);
    for (int k = 0; k < distinct; ++k) {
        std::string s;
        for (int c = uniform_int(rng, 1, 4); c > 0; --c) s.push_back(kTokens[uniform_int(rng, 0, 3)]);
        p.pattern_counts[s] += uniform_int(rng, 1, 40);
    }
    p.features = {uniform(rng, 0, 4), uniform(rng, 1, 8), uniform(rng, 0, 3.0 * kMsPerHour), uniform(rng, 0, 60)};
    return p;
}

Outcome pattern_distance_value() {
    Outcome o;
    const double d = pattern_distance_raw({{"HW", 4}}, {{"HW", 8}});
    o.require(d == 2.0, "raw distance was " + std::to_string(d));
    return o;
}

Outcome composite_axioms() {
    Outcome o;
    Rng rng(2);
    std::vector<ConsumerProfile> pop;
    for (std::size_t i = 0; i < 20000; ++i) pop.push_back(random_profile(rng, i));
    std::vector<FeatureVector> fv;
    for (const auto& p : pop) fv.push_back(p.features);
    const auto scaler = fit_scaler(fv);
    for (std::size_t k = 0; k < 10000; ++k) {
        const auto& a = pop[2 * k];
        const auto& b = pop[2 * k + 1];
        const double ab = composite_distance(a, b, scaler);
        const double ba = composite_distance(b, a, scaler);
        o.require(ab >= 0.0 && ab <= 1.0, "distance outside [0,1] at pair " + std::to_string(k));
        o.require(std::abs(ab - ba) <= 1e-15, "asymmetric at pair " + std::to_string(k));
        o.require(composite_distance(a, a, scaler) == 0.0, "d(a,a) != 0 at pair " + std::to_string(k));
    }
    return o;
}

Outcome dbscan_oracle() {
    Outcome o;
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 200));
        std::vector<oracle::Point2> pts(n);
        const int centres = uniform_int(rng, 1, 4);
        std::vector<oracle::Point2> c(static_cast<std::size_t>(centres));
        for (auto& x : c) x = {uniform(rng, 0, 1), uniform(rng, 0, 1)};
        std::normal_distribution<double> jitter(0.0, uniform(rng, 0.01, 0.05));
        for (auto& p : pts) {
            if (uniform(rng, 0, 1) < 0.2) {
                p = {uniform(rng, 0, 1), uniform(rng, 0, 1)};
            } else {
                const auto& m = c[static_cast<std::size_t>(uniform_int(rng, 0, centres - 1))];
                p = {m[0] + jitter(rng), m[1] + jitter(rng)};
            }
        }
        const double eps = uniform(rng, 0.02, 0.12);
        const auto min_pts = static_cast<std::size_t>(uniform_int(rng, 1, 12));
        auto dist = [&](std::size_t i, std::size_t j) { return oracle::euclidean(pts[i], pts[j]); };
        const auto expected = oracle::classify_density(n, dist, eps, min_pts);
        const auto got = dbscan(n, dist, {eps, min_pts});
        for (std::size_t i = 0; i < n; ++i) {
            o.require((got.roles[i] == PointRole::Core) == expected.core[i],
                      "core mismatch in instance " + std::to_string(trial));
            o.require((got.roles[i] == PointRole::Noise) == (expected.label[i] < 0),
                      "noise mismatch in instance " + std::to_string(trial));
        }
        o.require(oracle::same_partition(got.cluster_ids, expected.label),
                  "partition mismatch in instance " + std::to_string(trial));
    }
    return o;
}

Outcome min_pts_includes_self() {
    Outcome o;
    // Ten coincident points: ten neighbours counting the query point, nine without it.
    const auto a = dbscan(10, [](std::size_t, std::size_t) { return 0.0; }, {0.04, 10});
    o.require(a.cluster_count == 1 && a.noise_count() == 0, "ten coincident points did not form a cluster");
    const auto b = dbscan(9, [](std::size_t, std::size_t) { return 0.0; }, {0.04, 10});
    o.require(b.cluster_count == 0 && b.noise_count() == 9, "nine coincident points were not all noise");
    return o;
}

std::vector<TrajectoryEvent> events_at(std::initializer_list<TimestampMs> times) {
    std::vector<TrajectoryEvent> ev;
    int i = 0;
    for (auto t : times) ev.push_back({"o" + std::to_string(i++), EventKind::Entry, "L" + std::to_string(i), t});
    return ev;
}

Outcome journey_boundaries() {
    Outcome o;
    const DurationMs gap = 80 * kMsPerMinute;
    const TimestampMs t0 = 1'520'208'000'000;
    o.require(extract_journeys(events_at({t0, t0 + gap}), gap).size() == 1, "80 min gap split the journey");
    o.require(extract_journeys(events_at({t0, t0 + gap + 1}), gap).size() == 2, "80 min + 1 ms did not split");
    return o;
}

std::vector<TrajectoryEvent> spaced_events(std::size_t count, TimestampMs start, DurationMs span) {
    std::vector<TrajectoryEvent> ev;
    for (std::size_t i = 0; i < count; ++i) {
        const auto t = start + static_cast<TimestampMs>(static_cast<double>(span) * static_cast<double>(i) /
                                                       static_cast<double>(count - 1));
        ev.push_back({"o" + std::to_string(i), i % 2 ? EventKind::Exit : EventKind::Entry, "L", t});
    }
    return ev;
}

Outcome filter_suite() {
    Outcome o;
    const PreprocessConfig cfg;
    const TimestampMs t0 = 1'520'208'000'000;
    const auto hours = [](double h) { return static_cast<DurationMs>(h * static_cast<double>(kMsPerHour)); };
    o.require(apply_trajectory_filters(spaced_events(9, t0, hours(48)), cfg).discard == DiscardReason::TooFewPoints,
              "9-point trajectory kept");
    o.require(apply_trajectory_filters(spaced_events(10, t0, hours(48)), cfg).keep(), "10-point trajectory discarded");
    o.require(apply_trajectory_filters(spaced_events(20, t0, hours(23.9)), cfg).discard == DiscardReason::TooShortSpan,
              "23.9 h trajectory kept");
    o.require(apply_trajectory_filters(spaced_events(20, t0, hours(24.1)), cfg).keep(), "24.1 h trajectory discarded");
    const TimestampMs y1999 = 915'148'800'000;
    o.require(apply_trajectory_filters(spaced_events(20, y1999, hours(48)), cfg).discard ==
                  DiscardReason::BeforeEpochCutoff,
              "pre-2000 trajectory kept");
    return o;
}

double recovery_rate(const SynthConfig& synth) {
    const auto corpus = generate(synth);
    PipelineConfig cfg;
    cfg.time_zone = synth.timezone;
    const auto scoring = cfg.scoring();
    std::size_t hits = 0;
    std::size_t total = 0;
    for (const auto& truth : corpus.manifest.agents) {
        if (truth.archetype != Archetype::RegularCommuter) continue;
        ++total;
        const auto t = preprocess_device(truth.device_id, corpus.observations.at(truth.device_id), cfg.preprocess);
        if (!t.verdict.keep()) continue;
        const auto r = analyse_trajectory(t, scoring, cfg.preprocess.min_rest_for_orl);
        if (r.profile.labels.home == truth.home && r.profile.labels.work == truth.work) ++hits;
    }
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

Outcome home_work_recovery() {
    Outcome o;
    SynthConfig clean;
    clean.agents = {1000, 0, 0, 0};
    clean.days = 10;
    clean.seed = 7;
    const double clean_rate = recovery_rate(clean);

    SynthConfig noisy = clean;
    noisy.days = 28;
    noisy.event_dropout_prob = 0.3;
    const double noisy_rate = recovery_rate(noisy);

    int fixture_passes = 0;
    bool failure_is_documented = true;
    const PipelineConfig cfg;
    for (const auto& f : fixture_suite()) {
        const auto t = preprocess_device(f.truth.device_id, f.observations, cfg.preprocess);
        bool ok = false;
        if (f.expected_discard) {
            ok = t.verdict.discard == f.expected_discard;
        } else if (t.verdict.keep()) {
            const auto r = analyse_trajectory(t, cfg.scoring(), cfg.preprocess.min_rest_for_orl);
            ok = r.profile.labels.home == f.truth.home && r.profile.labels.work == f.truth.work &&
                 r.journey_string == expected_journey_string(f.truth);
        }
        fixture_passes += ok ? 1 : 0;
        if (ok == f.documented_failure) failure_is_documented = false;
    }

    std::ostringstream detail;
    detail << "zero-noise " << clean_rate * 100 << "%, dropout 0.3 " << noisy_rate * 100 << "%, fixtures "
           << fixture_passes << "/14";
    o.detail = detail.str();
    o.ok = clean_rate >= 0.95 && noisy_rate >= 0.70 && fixture_passes == 13 && failure_is_documented;
    return o;
}

Outcome single_cluster() {
    Outcome o;
    SynthConfig synth;
    synth.agents = {1900, 0, 0, 100};
    synth.days = 28;
    synth.min_intermediate_stops = 1;
    synth.max_intermediate_stops = 1;
    synth.seed = 8;
    const auto corpus = generate(synth);
    const auto result = run_pipeline(corpus.observations, PipelineConfig{});
    std::ostringstream detail;
    detail << result.sample.size() << " profiles, " << result.assignment.cluster_count << " cluster(s), "
           << result.assignment.noise_count() << " noise";
    o.detail = detail.str();
    o.ok = result.sample.size() >= 1900 && result.assignment.cluster_count == 1 && result.assignment.noise_count() > 0;
    return o;
}

Outcome pca_numerics() {
    Outcome o;
    Rng rng(9);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index rows = uniform_int(rng, 2, 200);
        Eigen::MatrixXd m(rows, 4);
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < 4; ++c) m(r, c) = normal(rng) * static_cast<double>(c + 1);
        }
        m.col(2) += 0.7 * m.col(0);
        const auto n = zscore_normalize(m);
        const auto model = pca_fit(n.data);
        const Eigen::MatrixXd centered = n.data.rowwise() - n.data.colwise().mean();
        const double trace = (centered.transpose() * centered).trace() / static_cast<double>(rows - 1);
        o.require(std::abs(model.eigenvalues.sum() - trace) < 1e-10, "trace identity");
        for (Eigen::Index i = 0; i + 1 < 4; ++i) {
            o.require(model.eigenvalues(i) >= model.eigenvalues(i + 1), "eigenvalue ordering");
        }
        const Eigen::MatrixXd gram = model.components.transpose() * model.components;
        o.require((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9, "orthonormality");
        const Eigen::MatrixXd rebuilt = project(n.data, model, 4) * model.components.transpose();
        o.require((rebuilt - n.data).cwiseAbs().maxCoeff() < 1e-9, "full-rank reconstruction");
    }
    Eigen::MatrixXd line(30, 2);
    for (int i = 0; i < 30; ++i) line.row(i) << i, 3.0 * i - 2.0;
    const auto model = pca_fit(zscore_normalize(line).data);
    o.require(std::abs(model.eigenvalues(1)) < 1e-10, "rank-1 second eigenvalue");
    return o;
}

Outcome lcs_oracle() {
    Outcome o;
    Rng rng(10);
    for (int trial = 0; trial < 500; ++trial) {
        const int alphabet = uniform_int(rng, 1, 20);
        auto seq = [&] {
            std::vector<std::string> s(static_cast<std::size_t>(uniform_int(rng, 0, 300)));
            for (auto& x : s) x = "S" + std::to_string(uniform_int(rng, 0, alphabet - 1));
            return s;
        };
        const auto a = seq();
        const auto b = seq();
        o.require(lcs_length(a, b) == oracle::longest_common_substring(a, b), "mismatch at pair " + std::to_string(trial));
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome end_to_end_determinism() {
    Outcome o;
    const auto dir = fs::temp_directory_path() / "wtraj-acceptance-determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    SynthConfig synth;
    synth.agents = {200, 40, 40, 20};
    synth.days = 14;
    synth.event_dropout_prob = 0.1;
    synth.missing_exit_prob = 0.05;
    synth.blackspot_gap_prob = 0.1;
    {
        std::ofstream out(dir / "observations.csv", std::ios::binary);
        write_observations_csv(out, generate(synth).observations);
    }
    PipelineConfig cfg;
    cfg.max_num_trajectories = 250;
    write_run_directory(run_from_input(dir / "observations.csv", InputFormat::Csv, cfg), dir / "seed");
    write_run_directory(run_from_manifest(dir / "seed" / "manifest.json"), dir / "a");
    write_run_directory(run_from_manifest(dir / "seed" / "manifest.json"), dir / "b");
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        const auto name = entry.path().filename();
        o.require(fs::exists(dir / "b" / name) && slurp(entry.path()) == slurp(dir / "b" / name),
                  name.string() + " differs");
        o.require(slurp(entry.path()) == slurp(dir / "seed" / name), name.string() + " differs from the first run");
        ++files;
    }
    o.require(files >= 11, "run directory incomplete");
    if (o.ok) o.detail = std::to_string(files) + " files identical";
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "pattern distance worked value", 0.001, pattern_distance_value},
        {2, "composite distance axioms on 10^4 pairs", 10, composite_axioms},
        {3, "DBSCAN matches density oracle on 100 instances", 30, dbscan_oracle},
        {4, "MinPts counts the query point", 0.1, min_pts_includes_self},
        {5, "journey split boundary at 80 min", 0.1, journey_boundaries},
        {6, "trajectory filter suite", 0.1, filter_suite},
        {7, "home/work recovery and fixture suite", 60, home_work_recovery},
        {8, "single cluster on commuter population", 300, single_cluster},
        {9, "PCA numerics", 5, pca_numerics},
        {10, "LCS matches dynamic programming on 500 pairs", 10, lcs_oracle},
        {11, "rerun from manifest is byte-identical", 120, end_to_end_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome outcome;
        const auto start = Clock::now();
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = seconds <= c.time_limit_s;
        const bool pass = outcome.ok && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %d: %s (%.3f s, limit %g s)%s%s%s\n", pass ? "PASS" : "FAIL", c.number,
                    c.title.c_str(), seconds, c.time_limit_s, outcome.detail.empty() ? "" : " [",
                    outcome.detail.c_str(), outcome.detail.empty() ? "" : "]");
        if (!in_time) std::printf("  time limit exceeded\n");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
