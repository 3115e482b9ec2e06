// wtraj: command line front end for the trajectory pipeline.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "wtraj/config.hpp"
#include "wtraj/csv.hpp"
#include "wtraj/ingest.hpp"
#include "wtraj/pipeline.hpp"
#include "wtraj/report.hpp"
#include "wtraj/routesim.hpp"
#include "wtraj/serialization.hpp"
#include "wtraj/synthgen.hpp"

namespace fs = std::filesystem;
using namespace wtraj;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string input;
    std::string out;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> sample;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_input = true, bool needs_out = true) {
    cmd->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    auto* in = cmd->add_option("--input", o.input, "Observation file")->check(CLI::ExistingFile);
    if (needs_input) in->required();
    auto* out = cmd->add_option("--out", o.out, "Output directory");
    if (needs_out) out->required();
    cmd->add_option("--format", o.format, "Input format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "Override SEED");
    cmd->add_option("--sample", o.sample, "Override MAX_NUM_TRAJECTORIES");
}

PipelineConfig resolve_config(const CommonOptions& o) {
    PipelineConfig cfg = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
    if (o.seed) cfg.seed = *o.seed;
    if (o.sample) cfg.max_num_trajectories = *o.sample;
    cfg.validate();
    return cfg;
}

InputFormat resolve_format(const std::string& f) {
    const auto fmt = parse_input_format(f);
    if (!fmt) throw std::invalid_argument("unknown format: " + f);
    return *fmt;
}

IngestResult load_input(const CommonOptions& o) {
    try {
        return ingest(o.input, resolve_format(o.format));
    } catch (const std::exception& e) {
        throw StageError("ingest", e.what());
    }
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

fs::path prepare_out(const std::string& dir) {
    fs::create_directories(dir);
    return dir;
}

std::vector<ConsumerReport> analyse_all(const std::vector<PreprocessedTrajectory>& trajectories,
                                        const PipelineConfig& cfg) {
    const auto scoring = cfg.scoring();
    std::vector<ConsumerReport> out;
    for (const auto& t : trajectories) {
        if (t.verdict.keep()) out.push_back(analyse_trajectory(t, scoring, cfg.preprocess.min_rest_for_orl));
    }
    return out;
}

std::vector<ConsumerReport> consumers_from(const CommonOptions& o, const PipelineConfig& cfg) {
    const auto input = load_input(o);
    return analyse_all(preprocess_all(input.devices, cfg.preprocess), cfg);
}

int cmd_synth(const SynthConfig& sc, bool fixtures, const std::string& out_dir, const std::string& format) {
    const auto dir = prepare_out(out_dir);
    const auto fmt = resolve_format(format);
    ObservationsByDevice devices;
    GroundTruthManifest truth;
    if (fixtures) {
        truth.seed = sc.seed;
        for (auto& f : fixture_suite(sc.seed)) {
            if (!f.observations.empty()) devices.emplace(f.truth.device_id, std::move(f.observations));
            truth.agents.push_back(std::move(f.truth));
        }
    } else {
        auto corpus = generate(sc);
        devices = std::move(corpus.observations);
        truth = std::move(corpus.manifest);
    }
    std::ostringstream obs;
    if (fmt == InputFormat::Csv) {
        write_observations_csv(obs, devices);
    } else {
        write_observations_json(obs, devices);
    }
    write_file(dir / (fmt == InputFormat::Csv ? "observations.csv" : "observations.json"), obs.str());
    write_file(dir / "truth.json", to_json(truth) + "\n");
    std::size_t n = 0;
    for (const auto& [_, v] : devices) n += v.size();
    std::cout << "wrote " << n << " observations for " << devices.size() << " devices to " << dir.string() << '\n';
    return 0;
}

int cmd_ingest(const CommonOptions& o) {
    const auto dir = prepare_out(o.out);
    const auto input = load_input(o);
    std::ostringstream obs;
    write_observations_csv(obs, input.devices);
    write_file(dir / "observations.csv", obs.str());
    std::ostringstream rej;
    write_rejects_csv(rej, input.rejects);
    write_file(dir / "rejects.csv", rej.str());
    std::cout << input.observation_count() << " observations, " << input.devices.size() << " devices, "
              << input.rejects.size() << " rejected rows\n";
    return 0;
}

int cmd_preprocess(const CommonOptions& o) {
    const auto cfg = resolve_config(o);
    const auto dir = prepare_out(o.out);
    const auto input = load_input(o);
    const auto trajectories = preprocess_all(input.devices, cfg.preprocess);

    std::ostringstream traj;
    std::ostringstream journeys;
    std::ostringstream discarded;
    traj << "device_id,status,reason,event_count,journey_count\n";
    journeys << "device_id,journey,start_ms,end_ms,locations\n";
    discarded << "device_id,observation_id,location,entry_ms,exit_ms,conflicts_with\n";
    for (const auto& t : trajectories) {
        write_csv_row(traj, {t.device_id, t.verdict.keep() ? "kept" : "discarded",
                             t.verdict.discard ? std::string(to_string(*t.verdict.discard)) : "",
                             std::to_string(t.events.size()), std::to_string(t.journeys.size())});
        for (std::size_t j = 0; j < t.journeys.size(); ++j) {
            const auto& jr = t.journeys[j];
            std::string locs;
            for (const auto& l : jr.location_sequence()) locs += (locs.empty() ? "" : ";") + l;
            write_csv_row(journeys, {t.device_id, std::to_string(j), std::to_string(jr.start_time()),
                                     std::to_string(jr.end_time()), locs});
        }
        for (const auto& d : t.discarded_observations) {
            write_csv_row(discarded, {d.observation.device_id, d.observation.observation_id, d.observation.location,
                                      std::to_string(d.observation.entry_time),
                                      std::to_string(d.observation.exit_time), d.conflicts_with});
        }
    }
    write_file(dir / "trajectories.csv", traj.str());
    write_file(dir / "journeys.csv", journeys.str());
    write_file(dir / "discarded_observations.csv", discarded.str());
    return 0;
}

int cmd_label(const CommonOptions& o) {
    const auto cfg = resolve_config(o);
    const auto dir = prepare_out(o.out);
    const auto consumers = consumers_from(o, cfg);
    std::string text = "[";
    for (std::size_t i = 0; i < consumers.size(); ++i) {
        auto item = report_to_json(consumers[i]);
        item.pop_back();
        text += (i == 0 ? "\n" : ",\n") + item;
    }
    text += consumers.empty() ? "]\n" : "\n]\n";
    write_file(dir / "consumers.json", text);
    return 0;
}

int cmd_features(const CommonOptions& o) {
    const auto cfg = resolve_config(o);
    const auto dir = prepare_out(o.out);
    const auto consumers = consumers_from(o, cfg);
    std::ostringstream s;
    s << "device_id";
    for (const auto& n : kFeatureNames) s << ',' << n;
    s << '\n';
    for (const auto& c : consumers) {
        std::vector<std::string> row{c.profile.device_id};
        for (double v : c.profile.features.values()) row.push_back(format_double(v));
        write_csv_row(s, row);
    }
    write_file(dir / "features.csv", s.str());
    return 0;
}

int cmd_pipeline(const CommonOptions& o, const std::string& manifest) {
    RunOutcome outcome;
    if (!manifest.empty()) {
        outcome = run_from_manifest(manifest);
    } else {
        if (o.input.empty()) throw std::invalid_argument("--input or --manifest is required");
        outcome = run_from_input(o.input, resolve_format(o.format), resolve_config(o));
    }
    write_run_directory(outcome, o.out);
    const auto& r = outcome.result;
    std::cout << r.trajectories.size() << " trajectories, " << r.consumers.size() << " kept, " << r.sample.size()
              << " sampled, " << r.assignment.cluster_count << " clusters, " << r.assignment.noise_count()
              << " noise\n";
    return 0;
}

/// cluster and project write the relevant subset of a full run directory.
int cmd_partial_run(const CommonOptions& o, const std::vector<std::string>& keep) {
    const auto outcome = run_from_input(o.input, resolve_format(o.format), resolve_config(o));
    const auto tmp = fs::path(o.out) / ".run";
    write_run_directory(outcome, tmp);
    for (const auto& name : keep) fs::rename(tmp / name, fs::path(o.out) / name);
    fs::remove_all(tmp);
    return 0;
}

int cmd_report(const CommonOptions& o, const std::string& device, bool json) {
    const auto cfg = resolve_config(o);
    const auto consumers = consumers_from(o, cfg);
    const auto& c = find_consumer(consumers, device);
    std::cout << (json ? report_to_json(c) : render_report(c));
    return 0;
}

int cmd_similar(const CommonOptions& o, const std::string& device, std::size_t k) {
    const auto cfg = resolve_config(o);
    const auto consumers = consumers_from(o, cfg);
    const auto& target = find_consumer(consumers, device);
    std::vector<ConsumerProfile> population;
    for (const auto& c : consumers) population.push_back(c.profile);
    const auto hits = top_k_similar(target.profile, population, k);
    const auto csv = similar_to_csv(hits);
    if (o.out.empty()) {
        std::cout << csv;
    } else {
        write_file(prepare_out(o.out) / "similar.csv", csv);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wireless trajectory mining: preprocessing, home/work labelling, clustering and reporting"};
    app.require_subcommand(1);

    SynthConfig synth;
    std::string synth_out;
    std::string synth_format = "csv";
    bool synth_fixtures = false;
    auto* s = app.add_subcommand("synth", "Generate a synthetic observation corpus with ground truth");
    s->add_option("--out", synth_out, "Output directory")->required();
    s->add_option("--seed", synth.seed, "Generator seed");
    s->add_option("--agents", synth.agents.regular_commuters, "Regular commuters");
    s->add_option("--multi-leg", synth.agents.multi_leg_commuters, "Multi-leg commuters");
    s->add_option("--shift", synth.agents.shift_workers, "Night shift workers");
    s->add_option("--sporadic", synth.agents.sporadic_travellers, "Sporadic travellers");
    s->add_option("--days", synth.days, "Days simulated");
    s->add_option("--start-date", synth.start_date, "Local date of day 0 (YYYY-MM-DD)");
    s->add_option("--dropout", synth.event_dropout_prob, "Per-observation dropout probability");
    s->add_option("--missing-exit", synth.missing_exit_prob, "Stuck-exit probability");
    s->add_option("--blackspot", synth.blackspot_gap_prob, "Coverage-hole probability per visit");
    s->add_option("--min-stops", synth.min_intermediate_stops, "Fewest intermediate stations on a commute");
    s->add_option("--max-stops", synth.max_intermediate_stops, "Most intermediate stations on a commute");
    s->add_option("--time-zone", synth.timezone, "IANA time zone of the simulated network");
    s->add_option("--format", synth_format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    s->add_flag("--fixtures", synth_fixtures, "Write the fixture suite instead of a random corpus");

    CommonOptions ingest_o, pre_o, label_o, feat_o, cluster_o, project_o, report_o, similar_o, pipe_o;
    add_common(app.add_subcommand("ingest", "Validate an observation file and list rejected rows"), ingest_o);
    add_common(app.add_subcommand("preprocess", "Filter trajectories and extract journeys"), pre_o);
    add_common(app.add_subcommand("label", "Detect rest locations and label home and work"), label_o);
    add_common(app.add_subcommand("features", "Compute clustering features"), feat_o);
    add_common(app.add_subcommand("cluster", "Sample, scale and cluster consumers"), cluster_o);
    add_common(app.add_subcommand("project", "Principal component projection of the sample"), project_o);

    std::string report_device;
    bool report_json = false;
    auto* rep = app.add_subcommand("report", "Print one consumer's report");
    add_common(rep, report_o, true, false);
    rep->add_option("--device", report_device, "Device id")->required();
    rep->add_flag("--json", report_json, "Print the JSON form");

    std::string similar_device;
    std::size_t similar_k = 10;
    auto* sim = app.add_subcommand("similar", "Rank consumers by shared route with a target");
    add_common(sim, similar_o, true, false);
    sim->add_option("--device", similar_device, "Target device id")->required();
    sim->add_option("--k", similar_k, "Number of results")->check(CLI::PositiveNumber);

    std::string manifest;
    auto* pipe = app.add_subcommand("pipeline", "Run every stage and write a run directory");
    add_common(pipe, pipe_o, false, true);
    pipe->add_option("--manifest", manifest, "Re-run from an existing manifest.json")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        if (stage == "synth") return cmd_synth(synth, synth_fixtures, synth_out, synth_format);
        if (stage == "ingest") return cmd_ingest(ingest_o);
        if (stage == "preprocess") return cmd_preprocess(pre_o);
        if (stage == "label") return cmd_label(label_o);
        if (stage == "features") return cmd_features(feat_o);
        if (stage == "cluster") return cmd_partial_run(cluster_o, {"assignment.csv", "scaler.json", "features.csv"});
        if (stage == "project") return cmd_partial_run(project_o, {"chart.csv", "pca.json", "chart.svg"});
        if (stage == "report") return cmd_report(report_o, report_device, report_json);
        if (stage == "similar") return cmd_similar(similar_o, similar_device, similar_k);
        if (stage == "pipeline") return cmd_pipeline(pipe_o, manifest);
    } catch (const StageError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
