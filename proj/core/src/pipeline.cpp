#include "wtraj/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "config_json.hpp"
#include "json_codec.hpp"
#include "wtraj/csv.hpp"
#include "wtraj/metric.hpp"

namespace wtraj {

ConsumerReport analyse_trajectory(const PreprocessedTrajectory& trajectory, const ScoringConfig& scoring,
                                  DurationMs min_rest_for_orl) {
    ConsumerReport report;
    auto& p = report.profile;
    p.device_id = trajectory.device_id;
    p.journeys = trajectory.journeys;
    p.orls = score_orls(detect_orls(trajectory.events, min_rest_for_orl), trajectory.events, p.journeys, scoring);
    p.labels = label_home_work(p.orls);
    auto patterns = build_journey_string(p.journeys, p.labels);
    p.pattern_counts = std::move(patterns.counts);
    report.journey_string = std::move(patterns.journey_string);
    report.condensed = condense_journeys(p.journeys, scoring.timezone);
    p.features = compute_features(p);
    return report;
}

std::vector<PreprocessedTrajectory> preprocess_all(const ObservationsByDevice& devices,
                                                   const PreprocessConfig& config) {
    std::vector<PreprocessedTrajectory> out;
    out.reserve(devices.size());
    for (const auto& [id, observations] : devices) out.push_back(preprocess_device(id, observations, config));
    return out;
}

std::vector<std::size_t> sample_indices(std::size_t count, std::size_t limit, std::uint64_t seed) {
    std::vector<std::size_t> all(count);
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (count <= limit) return all;
    std::vector<std::size_t> picked;
    picked.reserve(limit);
    std::mt19937_64 rng(seed);
    std::sample(all.begin(), all.end(), std::back_inserter(picked), limit, rng);
    return picked;
}

Eigen::MatrixXd feature_matrix(const std::vector<ConsumerProfile>& profiles) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(profiles.size()), static_cast<Eigen::Index>(FeatureVector::kSize));
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto v = profiles[i].features.values();
        for (std::size_t c = 0; c < v.size(); ++c) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = v[c];
    }
    return m;
}

std::vector<ConsumerProfile> PipelineResult::sampled_profiles() const {
    std::vector<ConsumerProfile> out;
    out.reserve(sample.size());
    for (auto i : sample) out.push_back(consumers[i].profile);
    return out;
}

namespace {

constexpr std::size_t kDistanceCacheBudget = std::size_t{256} << 20;

template <class F>
auto in_stage(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

}  // namespace

PipelineResult run_pipeline(const ObservationsByDevice& devices, const PipelineConfig& config) {
    PipelineResult r;
    r.config = config;
    const auto scoring = in_stage("config", [&] {
        config.validate();
        return config.scoring();
    });

    const auto trajectories = in_stage("preprocess", [&] { return preprocess_all(devices, config.preprocess); });
    in_stage("semantics", [&] {
        for (const auto& t : trajectories) {
            r.trajectories.push_back({t.device_id, t.events.size(), t.verdict.discard, false});
            r.discarded_observations.insert(r.discarded_observations.end(), t.discarded_observations.begin(),
                                            t.discarded_observations.end());
            if (t.verdict.keep()) r.consumers.push_back(analyse_trajectory(t, scoring, config.preprocess.min_rest_for_orl));
        }
    });

    r.sample = sample_indices(r.consumers.size(), config.max_num_trajectories, config.seed);
    {
        std::size_t k = 0;
        for (auto i : r.sample) {
            while (r.trajectories[k].device_id != r.consumers[i].profile.device_id) ++k;
            r.trajectories[k].sampled = true;
        }
    }
    const auto profiles = r.sampled_profiles();
    if (profiles.empty()) return r;

    in_stage("features", [&] {
        std::vector<FeatureVector> features;
        features.reserve(profiles.size());
        for (const auto& p : profiles) features.push_back(p.features);
        r.scaler = fit_scaler(features);
    });
    in_stage("cluster", [&] {
        const CompositeMetric metric(profiles, r.scaler);
        r.assignment = dbscan(
            profiles.size(), [&metric](std::size_t i, std::size_t j) { return metric(i, j); }, config.dbscan,
            {kDistanceCacheBudget});
    });
    if (profiles.size() >= 2) {
        in_stage("reduce", [&] {
            r.normalized = zscore_normalize(feature_matrix(profiles));
            r.pca = pca_fit(r.normalized->data);
            r.projection = project(r.normalized->data, *r.pca, 2);
        });
    }
    return r;
}

RunOutcome run_from_input(const std::filesystem::path& input, InputFormat format, const PipelineConfig& config) {
    RunOutcome out;
    auto ingested = in_stage("ingest", [&] {
        out.input.path = std::filesystem::absolute(input).lexically_normal();
        out.input.format = format;
        out.input.fingerprint = file_fingerprint(out.input.path);
        return ingest(out.input.path, format);
    });
    out.rejects = std::move(ingested.rejects);
    out.input.rejected_rows = out.rejects.size();
    out.result = run_pipeline(ingested.devices, config);
    return out;
}

RunOutcome run_from_manifest(const std::filesystem::path& manifest_path) {
    const auto [config, input, format, fingerprint] = in_stage("manifest", [&] {
        std::ifstream in(manifest_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read manifest: " + manifest_path.string());
        const auto j = Json::parse(in);
        const auto& src = j.at("input");
        const auto fmt = parse_input_format(src.at("format").get<std::string>());
        if (!fmt) throw std::invalid_argument("manifest has an unknown input format");
        return std::tuple{config_decode(j.at("config")), std::filesystem::path(src.at("path").get<std::string>()),
                          *fmt, src.at("fnv1a64").get<std::string>()};
    });
    in_stage("manifest", [&] {
        if (file_fingerprint(input) != fingerprint) {
            throw std::runtime_error("input file changed since the manifest was written: " + input.string());
        }
    });
    return run_from_input(input, format, config);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string feature_header(std::string_view prefix) {
    std::string out;
    for (const auto& n : kFeatureNames) {
        out += ',';
        out += prefix;
        out += n;
    }
    return out;
}

Json pca_json(const PipelineResult& r) {
    Json j = Json::object();
    j["feature_names"] = Json::array();
    for (const auto& n : kFeatureNames) j["feature_names"].push_back(std::string(n));
    if (!r.pca) {
        j["eigenvalues"] = Json::array();
        j["components"] = Json::array();
        return j;
    }
    const auto& m = *r.pca;
    std::vector<double> eig(m.eigenvalues.data(), m.eigenvalues.data() + m.eigenvalues.size());
    std::vector<double> ratio;
    std::vector<std::vector<double>> comps;
    for (Eigen::Index k = 0; k < m.components.cols(); ++k) {
        ratio.push_back(m.explained_variance_ratio(k));
        comps.emplace_back(m.components.col(k).data(), m.components.col(k).data() + m.components.rows());
    }
    j["eigenvalues"] = eig;
    j["explained_variance_ratio"] = ratio;
    j["components"] = comps;
    const auto& nz = *r.normalized;
    j["mean"] = std::vector<double>(nz.mean.data(), nz.mean.data() + nz.mean.size());
    j["stddev"] = std::vector<double>(nz.stddev.data(), nz.stddev.data() + nz.stddev.size());
    return j;
}

std::string chart_svg(const PipelineResult& r) {
    constexpr double kWidth = 640;
    constexpr double kHeight = 480;
    constexpr double kMargin = 40;
    static constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                               "#8c564b", "#e377c2", "#bcbd22", "#17becf", "#7f7f7f"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8 << "\" text-anchor=\"middle\" font-size=\"12\">PC1</text>\n";
    s << "<text x=\"12\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 12 "
      << kHeight / 2 << ")\">PC2</text>\n";
    const auto n = r.projection.rows();
    if (n > 0 && r.projection.cols() >= 2) {
        const double x0 = r.projection.col(0).minCoeff();
        const double x1 = r.projection.col(0).maxCoeff();
        const double y0 = r.projection.col(1).minCoeff();
        const double y1 = r.projection.col(1).maxCoeff();
        const auto map = [](double v, double lo, double hi, double a, double b) {
            return hi > lo ? a + (v - lo) / (hi - lo) * (b - a) : (a + b) / 2;
        };
        for (Eigen::Index i = 0; i < n; ++i) {
            const int c = r.assignment.cluster_ids[static_cast<std::size_t>(i)];
            const char* colour = c == kNoise ? "#000000" : kPalette[static_cast<std::size_t>(c) % 10];
            s << "<circle cx=\"" << format_trimmed(map(r.projection(i, 0), x0, x1, kMargin, kWidth - kMargin), 2)
              << "\" cy=\"" << format_trimmed(map(r.projection(i, 1), y0, y1, kHeight - kMargin, kMargin), 2)
              << "\" r=\"2.5\" fill=\"" << colour << "\" fill-opacity=\"0.6\"/>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace

void write_run_directory(const RunOutcome& outcome, const std::filesystem::path& out_dir) {
    const auto& r = outcome.result;
    in_stage("write", [&] {
        std::filesystem::create_directories(out_dir);

        std::size_t kept = 0;
        for (const auto& t : r.trajectories) kept += t.discard ? 0 : 1;
        Json manifest = {
            {"config", config_encode(r.config)},
            {"input",
             {{"path", outcome.input.path.string()},
              {"format", std::string(to_string(outcome.input.format))},
              {"fnv1a64", outcome.input.fingerprint}}},
            {"counts",
             {{"devices", r.trajectories.size()},
              {"rejected_rows", outcome.input.rejected_rows},
              {"discarded_observations", r.discarded_observations.size()},
              {"trajectories_kept", kept},
              {"trajectories_discarded", r.trajectories.size() - kept},
              {"sampled", r.sample.size()},
              {"clusters", r.assignment.cluster_count},
              {"noise", r.assignment.noise_count()}}},
            {"scaler", encode(r.scaler)},
        };
        write_text(out_dir / "manifest.json", dump_document(manifest));

        Json consumers = Json::array();
        for (const auto& c : r.consumers) consumers.push_back(encode_report(c));
        write_text(out_dir / "consumers.json", dump_document(consumers));

        std::ostringstream traj;
        traj << "device_id,status,reason,event_count,sampled\n";
        for (const auto& t : r.trajectories) {
            write_csv_row(traj, {t.device_id, t.discard ? "discarded" : "kept",
                                 t.discard ? std::string(to_string(*t.discard)) : "", std::to_string(t.event_count),
                                 t.sampled ? "true" : "false"});
        }
        write_text(out_dir / "trajectories.csv", traj.str());

        std::ostringstream rej;
        write_rejects_csv(rej, outcome.rejects);
        write_text(out_dir / "rejects.csv", rej.str());

        std::ostringstream disc;
        disc << "device_id,observation_id,location,entry_ms,exit_ms,conflicts_with\n";
        for (const auto& d : r.discarded_observations) {
            const auto& o = d.observation;
            write_csv_row(disc, {o.device_id, o.observation_id, o.location, std::to_string(o.entry_time),
                                 std::to_string(o.exit_time), d.conflicts_with});
        }
        write_text(out_dir / "discarded_observations.csv", disc.str());

        std::ostringstream feat;
        feat << "device_id" << feature_header("") << feature_header("scaled_") << '\n';
        for (auto i : r.sample) {
            const auto& p = r.consumers[i].profile;
            std::vector<std::string> row{p.device_id};
            for (double v : p.features.values()) row.push_back(format_double(v));
            for (double v : scale(p.features, r.scaler).values()) row.push_back(format_double(v));
            write_csv_row(feat, row);
        }
        write_text(out_dir / "features.csv", feat.str());

        write_text(out_dir / "scaler.json", dump_document(encode(r.scaler)));

        std::ostringstream assign;
        assign << "item_id,cluster_id,role\n";
        for (std::size_t k = 0; k < r.sample.size(); ++k) {
            write_csv_row(assign, {r.consumers[r.sample[k]].profile.device_id,
                                   std::to_string(r.assignment.cluster_ids[k]),
                                   std::string(to_string(r.assignment.roles[k]))});
        }
        write_text(out_dir / "assignment.csv", assign.str());

        write_text(out_dir / "pca.json", dump_document(pca_json(r)));

        std::ostringstream chart;
        chart << "item_id,pc1,pc2,cluster_id\n";
        for (Eigen::Index k = 0; k < r.projection.rows(); ++k) {
            const auto i = static_cast<std::size_t>(k);
            write_csv_row(chart, {r.consumers[r.sample[i]].profile.device_id, format_double(r.projection(k, 0)),
                                  format_double(r.projection(k, 1)), std::to_string(r.assignment.cluster_ids[i])});
        }
        write_text(out_dir / "chart.csv", chart.str());
        write_text(out_dir / "chart.svg", chart_svg(r));
    });
}

}  // namespace wtraj
