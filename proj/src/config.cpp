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
#include <cmath>
#include <fstream>
#include <sstream>

#include "genlaw/pipeline.hpp"
#include "json_util.hpp"

namespace genlaw {

std::string_view to_string(AnalysisMethod m)
{
    switch (m) {
    case AnalysisMethod::Pca:
        return "pca";
    case AnalysisMethod::MdsEuclidean:
        return "mds-euclidean";
    case AnalysisMethod::MdsManhattan:
        return "mds-manhattan";
    }
    return "";
}

AnalysisMethod parse_method(std::string_view s)
{
    if (s == "pca")
        return AnalysisMethod::Pca;
    if (s == "mds-euclidean")
        return AnalysisMethod::MdsEuclidean;
    if (s == "mds-manhattan")
        return AnalysisMethod::MdsManhattan;
    config_error("unknown method '" + std::string(s) + "' (expected pca, mds-euclidean or mds-manhattan)");
}

CenterSelection parse_center_selection(std::string_view s)
{
    if (s == "centroid")
        return CenterSelection::Centroid;
    if (s == "true")
        return CenterSelection::True;
    if (s == "both")
        return CenterSelection::Both;
    config_error("unknown center '" + std::string(s) + "' (expected centroid, true or both)");
}

std::string_view to_string(CenterSelection c)
{
    switch (c) {
    case CenterSelection::Centroid:
        return "centroid";
    case CenterSelection::True:
        return "true";
    case CenterSelection::Both:
        return "both";
    }
    return "";
}

void AnalysisConfig::validate() const
{
    if (!(smoothing >= 0.0) || !std::isfinite(smoothing))
        config_error("analysis.smoothing must be >= 0");
    if (smacof_max_iter < 1)
        config_error("analysis.smacof_max_iter must be >= 1");
    if (!(smacof_tol > 0.0))
        config_error("analysis.smacof_tol must be positive");
    for (int c : classes)
        if (c < 0)
            config_error("analysis.classes must be nonnegative class ids");
}

void PipelineConfig::set_seed(std::uint64_t seed)
{
    task.seed = seed;
    train.seed = seed;
}

std::vector<int> parse_class_list(std::string_view s)
{
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto token = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        try {
            const auto v = parse_int(token);
            if (v < 0)
                config_error("");
            out.push_back(static_cast<int>(v));
        } catch (const Error&) {
            config_error("invalid class list '" + std::string(s) + "'");
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

namespace {

TaskConfig task_from_json(const nlohmann::json& j)
{
    TaskConfig c;
    json_util::Reader r(j, "task");
    r.get("num_classes", c.num_classes);
    r.get("feature_dim", c.feature_dim);
    r.get("samples_per_class_clear", c.samples_per_class_clear);
    r.get("samples_per_class_camo", c.samples_per_class_camo);
    if (const auto* mix = r.child("camo_mix")) {
        json_util::Reader m(*mix, "task.camo_mix");
        m.get("background_matching", c.camo_mix.background_matching);
        m.get("mimicry", c.camo_mix.mimicry);
        m.get("other", c.camo_mix.other);
        m.finish();
    }
    r.get("camo_shift", c.camo_shift);
    r.get("clear_spread", c.clear_spread);
    r.get("camo_spread_factor", c.camo_spread_factor);
    r.get("seed", c.seed);
    r.finish();
    c.validate();
    return c;
}

nlohmann::json task_to_json(const TaskConfig& c)
{
    return {{"num_classes", c.num_classes},
            {"feature_dim", c.feature_dim},
            {"samples_per_class_clear", c.samples_per_class_clear},
            {"samples_per_class_camo", c.samples_per_class_camo},
            {"camo_mix",
             {{"background_matching", c.camo_mix.background_matching},
              {"mimicry", c.camo_mix.mimicry},
              {"other", c.camo_mix.other}}},
            {"camo_shift", c.camo_shift},
            {"clear_spread", c.clear_spread},
            {"camo_spread_factor", c.camo_spread_factor},
            {"seed", c.seed}};
}

CenterSearchConfig center_from_json(const nlohmann::json& j)
{
    CenterSearchConfig c;
    json_util::Reader r(j, "center_search");
    r.get("grid_resolution", c.grid_resolution);
    r.get("box_expansion", c.box_expansion);
    std::string s;
    if (r.get("monotonicity_criterion", s))
        c.monotonicity_criterion = parse_criterion(s);
    if (r.get("distance_metric", s))
        c.distance_metric = parse_metric(s);
    r.finish();
    c.validate();
    return c;
}

nlohmann::json center_to_json(const CenterSearchConfig& c)
{
    return {{"grid_resolution", c.grid_resolution},
            {"box_expansion", c.box_expansion},
            {"monotonicity_criterion", to_string(c.monotonicity_criterion)},
            {"distance_metric", to_string(c.distance_metric)}};
}

AnalysisConfig analysis_from_json(const nlohmann::json& j)
{
    AnalysisConfig c;
    json_util::Reader r(j, "analysis");
    std::string s;
    if (r.get("method", s))
        c.method = parse_method(s);
    if (r.get("centers", s))
        c.centers = parse_center_selection(s);
    r.get("smoothing", c.smoothing);
    r.get("smacof_max_iter", c.smacof_max_iter);
    r.get("smacof_tol", c.smacof_tol);
    r.get("classes", c.classes);
    if (r.get("search_space", s)) {
        if (s == "reduced")
            c.search_space = SearchSpace::Reduced;
        else if (s == "full")
            c.search_space = SearchSpace::Full;
        else
            config_error("analysis.search_space must be 'reduced' or 'full'");
    }
    r.get("export_surfaces", c.export_surfaces);
    r.finish();
    c.validate();
    return c;
}

nlohmann::json analysis_to_json(const AnalysisConfig& c)
{
    return {{"method", to_string(c.method)},
            {"centers", to_string(c.centers)},
            {"smoothing", c.smoothing},
            {"smacof_max_iter", c.smacof_max_iter},
            {"smacof_tol", c.smacof_tol},
            {"classes", c.classes},
            {"search_space", c.search_space == SearchSpace::Reduced ? "reduced" : "full"},
            {"export_surfaces", c.export_surfaces}};
}

}  // namespace

PipelineConfig parse_config(const nlohmann::json& j)
{
    PipelineConfig c;
    json_util::Reader r(j, "config");
    if (const auto* t = r.child("task"))
        c.task = task_from_json(*t);
    if (const auto* t = r.child("train"))
        c.train = train_config_from_json(*t);
    if (const auto* t = r.child("center_search"))
        c.center_search = center_from_json(*t);
    if (const auto* t = r.child("analysis"))
        c.analysis = analysis_from_json(*t);
    std::uint64_t seed = 0;
    if (r.get("seed", seed))
        c.set_seed(seed);
    r.finish();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        config_error("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        config_error(path.string() + ": " + e.what());
    }
    return parse_config(j);
}

nlohmann::json config_to_json(const PipelineConfig& c)
{
    return {{"task", task_to_json(c.task)},
            {"train", train_config_to_json(c.train)},
            {"center_search", center_to_json(c.center_search)},
            {"analysis", analysis_to_json(c.analysis)}};
}

PipelineConfig resolve_config(const RunOptions& opts)
{
    PipelineConfig c = opts.config_path ? load_config(*opts.config_path) : PipelineConfig{};
    if (opts.seed)
        c.set_seed(*opts.seed);
    if (opts.method)
        c.analysis.method = parse_method(*opts.method);
    if (opts.center)
        c.analysis.centers = parse_center_selection(*opts.center);
    if (opts.metric)
        c.center_search.distance_metric = parse_metric(*opts.metric);
    if (opts.classes)
        c.analysis.classes = *opts.classes;
    if (opts.export_surfaces)
        c.analysis.export_surfaces = *opts.export_surfaces;
    if (opts.threads < 0)
        config_error("threads must be >= 0");
    c.center_search.threads = opts.threads;
    c.analysis.validate();
    c.center_search.validate();
    return c;
}

}  // namespace genlaw
