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
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "genlaw/genlaw.h"

namespace {

struct Args {
    std::string config, out, dataset, regime, model, activations, method, center, metric, classes, analysis;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool quiet = false;
    std::optional<bool> surfaces;
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

genlaw_run_options to_options(const Args& a)
{
    genlaw_run_options o;
    genlaw_run_options_init(&o);
    o.config_path = opt(a.config);
    o.out_dir = opt(a.out);
    o.has_seed = a.seed.has_value();
    o.seed = a.seed.value_or(0);
    o.threads = a.threads;
    o.quiet = a.quiet;
    o.dataset_dir = opt(a.dataset);
    o.regime = opt(a.regime);
    o.model_dir = opt(a.model);
    o.activations_path = opt(a.activations);
    o.method = opt(a.method);
    o.center = opt(a.center);
    o.metric = opt(a.metric);
    o.classes = opt(a.classes);
    o.export_surfaces = a.surfaces ? static_cast<int>(*a.surfaces) : -1;
    o.analysis_dir = opt(a.analysis);
    return o;
}

void common_flags(CLI::App* cmd, Args& a)
{
    cmd->add_option("--config", a.config, "JSON config file");
    cmd->add_option("--out", a.out, "Output directory")->required();
    cmd->add_option("--seed", a.seed, "Master seed (overrides the config)");
}

void analysis_flags(CLI::App* cmd, Args& a)
{
    cmd->add_option("--method", a.method, "pca, mds-euclidean or mds-manhattan");
    cmd->add_option("--center", a.center, "centroid, true or both");
    cmd->add_option("--metric", a.metric, "euclidean or manhattan");
    cmd->add_option("--classes", a.classes, "Comma-separated class ids to analyze");
    cmd->add_flag("--surfaces,!--no-surfaces", a.surfaces, "Export true-center score surfaces");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"genlaw: generalization-gradient experiments on a synthetic camouflage task"};
    app.set_version_flag("--version", std::string(genlaw_version()));
    app.require_subcommand(1);
    Args a;
    app.add_option("--threads", a.threads, "Worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    app.add_flag("-q,--quiet", a.quiet, "Suppress progress logging");

    auto* synth = app.add_subcommand("synth", "Generate the synthetic dataset");
    common_flags(synth, a);

    auto* train = app.add_subcommand("train", "Train one regime on a dataset");
    common_flags(train, a);
    train->add_option("--dataset", a.dataset, "Dataset directory")->required();
    train->add_option("--regime", a.regime, "clearnet, camonet, expclearnet or expcamonet")->required();

    auto* analyze = app.add_subcommand("analyze", "Reduce activations and fit regions and curves");
    common_flags(analyze, a);
    auto* model = analyze->add_option("--model", a.model, "Model directory written by train");
    auto* acts = analyze->add_option("--activations", a.activations, "Activation CSV");
    model->excludes(acts);
    analyze->add_option("--dataset", a.dataset, "Dataset directory (default: from the model manifest)");
    analysis_flags(analyze, a);

    auto* plot = app.add_subcommand("plot", "Render SVG figures from an analysis directory");
    plot->add_option("--analysis", a.analysis, "Analysis directory")->required();
    plot->add_option("--out", a.out, "Output directory")->required();

    auto* all = app.add_subcommand("all", "Run synth, then train/analyze/plot for every regime");
    common_flags(all, a);
    analysis_flags(all, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return GENLAW_ERR_CONFIG;
    }

    const genlaw_run_options o = to_options(a);
    genlaw_status status = GENLAW_OK;
    if (synth->parsed())
        status = genlaw_run_synth(&o);
    else if (train->parsed())
        status = genlaw_run_train(&o);
    else if (analyze->parsed())
        status = genlaw_run_analyze(&o);
    else if (plot->parsed())
        status = genlaw_run_plot(&o);
    else if (all->parsed())
        status = genlaw_run_all(&o);
    if (status != GENLAW_OK)
        std::fprintf(stderr, "genlaw: error: %s\n", genlaw_last_error());
    return status;
}
