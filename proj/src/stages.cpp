/*
 *  Copyright 2026 The genlaw Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include <iostream>

#include "artifacts.hpp"

namespace genlaw {

namespace fs = std::filesystem;

namespace {

class Log {
public:
    explicit Log(bool quiet) : quiet_(quiet) {}

    template <typename... Args>
    void operator()(const Args&... args) const
    {
        if (quiet_)
            return;
        std::cerr << "[genlaw] ";
        (std::cerr << ... << args);
        std::cerr << '\n';
    }

private:
    bool quiet_;
};

void ensure_dir(const fs::path& dir)
{
    if (dir.empty())
        config_error("an output directory is required");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        data_error("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<fs::path> config_inputs(const RunOptions& opts)
{
    if (opts.config_path)
        return {*opts.config_path};
    return {};
}

Dataset load_verified_dataset(const fs::path& dir)
{
    const fs::path csv = dir / "dataset.csv";
    if (!fs::exists(csv))
        data_error("dataset not found: " + csv.string());
    verify_manifest(dir);
    return read_dataset_csv(csv);
}

/// Dataset directory recorded as the input of a training run.
fs::path dataset_dir_of_model(const fs::path& model_dir)
{
    const auto manifest = verify_manifest(model_dir);
    for (const auto& in : manifest.at("inputs")) {
        const fs::path p = model_dir / in.at("path").get<std::string>();
        if (p.filename() == "dataset.csv")
            return p.parent_path();
    }
    data_error("manifest in " + model_dir.string() + " does not reference a dataset; pass --dataset");
}

}  // namespace

void run_synth(const RunOptions& opts)
{
    const Log log(opts.quiet);
    const PipelineConfig cfg = resolve_config(opts);
    ensure_dir(opts.out_dir);
    log("synth: ", cfg.task.num_classes, " classes, seed ", cfg.task.seed);
    const Dataset ds = generate_task(cfg.task);
    const fs::path csv = opts.out_dir / "dataset.csv";
    write_dataset_csv(ds, csv);
    write_manifest(opts.out_dir, "synth", config_to_json(cfg), config_inputs(opts), {csv});
    log("synth: wrote ", ds.samples.size(), " samples to ", csv.string());
}

void run_train(const RunOptions& opts)
{
    const Log log(opts.quiet);
    const PipelineConfig cfg = resolve_config(opts);
    const Regime regime = parse_regime(opts.regime);
    if (opts.dataset_dir.empty())
        config_error("train needs --dataset");
    const Dataset ds = load_verified_dataset(opts.dataset_dir);
    ensure_dir(opts.out_dir);
    log("train: ", to_string(regime), " on ", ds.samples.size(), " samples");
    const Classifier model = train(ds, regime, cfg.train);

    std::vector<fs::path> files;
    files.push_back(opts.out_dir / "model.json");
    artifacts::write_json(files.back(), classifier_to_json(model));
    const auto report = artifacts::accuracy_report(model, ds);
    files.push_back(opts.out_dir / "accuracy.json");
    artifacts::write_json(files.back(), report);
    files.push_back(opts.out_dir / "accuracy.csv");
    artifacts::write_accuracy_csv(files.back(), {report});
    for (auto& f : artifacts::write_training_log(opts.out_dir, model))
        files.push_back(std::move(f));
    files.push_back(opts.out_dir / "activations.csv");
    export_activations(extract_activations(model, ds), files.back());

    auto inputs = config_inputs(opts);
    inputs.push_back(opts.dataset_dir / "dataset.csv");
    auto echo = config_to_json(cfg);
    echo["regime"] = to_string(regime);
    write_manifest(opts.out_dir, "train", echo, inputs, files);
    for (const auto& c : report.at("cells"))
        if (c.at("split") == "test")
            log("train: test accuracy on ", c.at("tested_on").get<std::string>(), " = ", c.at("accuracy").get<double>());
}

void run_analyze(const RunOptions& opts)
{
    const Log log(opts.quiet);
    const PipelineConfig cfg = resolve_config(opts);
    if (opts.model_dir.has_value() == opts.activations_path.has_value())
        config_error("analyze needs exactly one of --model or --activations");

    auto inputs = config_inputs(opts);
    ActivationSet acts;
    if (opts.model_dir) {
        const fs::path model_json = *opts.model_dir / "model.json";
        if (!fs::exists(model_json))
            data_error("model not found: " + model_json.string());
        const fs::path ds_dir = opts.dataset_dir.empty() ? dataset_dir_of_model(*opts.model_dir) : opts.dataset_dir;
        if (!opts.dataset_dir.empty())
            verify_manifest(*opts.model_dir);
        const Classifier model = classifier_from_json(artifacts::read_json(model_json));
        const Dataset ds = load_verified_dataset(ds_dir);
        if (ds.feature_dim() != model.input_dim())
            data_error("model expects " + std::to_string(model.input_dim()) + " input features, dataset has " +
                       std::to_string(ds.feature_dim()));
        if (ds.num_classes() != model.num_classes())
            data_error("model has " + std::to_string(model.num_classes()) + " outputs, dataset has " +
                       std::to_string(ds.num_classes()) + " classes");
        acts = extract_activations(model, ds);
        inputs.push_back(model_json);
        inputs.push_back(ds_dir / "dataset.csv");
    } else {
        acts = ingest_activations(*opts.activations_path);
        inputs.push_back(*opts.activations_path);
    }

    ensure_dir(opts.out_dir);
    const AnalysisResult res = analyze(acts, cfg.analysis, cfg.center_search);
    log("analyze: ", to_string(cfg.analysis.method), " on ", res.rows.size(), " of ", acts.size(), " rows");
    for (const auto& w : res.warnings)
        log("analyze: warning: ", w);
    const auto files = artifacts::write_analysis(opts.out_dir, res, cfg);
    write_manifest(opts.out_dir, "analyze", config_to_json(cfg), inputs, files);
    log("analyze: wrote ", files.size(), " artifacts to ", opts.out_dir.string());
}

void run_plot(const RunOptions& opts)
{
    const Log log(opts.quiet);
    if (opts.analysis_dir.empty())
        config_error("plot needs an analysis directory");
    const auto manifest = verify_manifest(opts.analysis_dir);
    ensure_dir(opts.out_dir);
    const auto files = artifacts::write_figures(opts.analysis_dir, opts.out_dir);
    std::vector<fs::path> inputs;
    for (const auto& a : manifest.at("artifacts"))
        inputs.push_back(opts.analysis_dir / a.at("path").get<std::string>());
    write_manifest(opts.out_dir, "plot", manifest.at("config"), inputs, files);
    log("plot: wrote ", files.size(), " figures to ", opts.out_dir.string());
}

void run_all(const RunOptions& opts)
{
    const Log log(opts.quiet);
    const PipelineConfig cfg = resolve_config(opts);
    ensure_dir(opts.out_dir);

    RunOptions o = opts;
    o.out_dir = opts.out_dir / "dataset";
    run_synth(o);

    std::vector<nlohmann::json> reports;
    std::vector<fs::path> files;
    for (Regime r : kAllRegimes) {
        const fs::path base = opts.out_dir / std::string(to_string(r));
        o = opts;
        o.regime = std::string(to_string(r));
        o.dataset_dir = opts.out_dir / "dataset";
        o.out_dir = base / "model";
        run_train(o);
        reports.push_back(artifacts::read_json(base / "model" / "accuracy.json"));

        o.model_dir = base / "model";
        o.activations_path.reset();
        o.out_dir = base / "analysis";
        run_analyze(o);

        o.analysis_dir = base / "analysis";
        o.out_dir = base / "figures";
        run_plot(o);
        files.push_back(base / "model" / "accuracy.json");
    }
    const fs::path table = opts.out_dir / "accuracy_table.csv";
    artifacts::write_accuracy_csv(table, reports);
    write_manifest(opts.out_dir, "all", config_to_json(cfg), files, {table});
    log("all: accuracy table written to ", table.string());
}

}  // namespace genlaw
