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
#include "artifacts.hpp"

#include <fstream>

namespace genlaw::artifacts {

namespace {

std::ofstream open_out(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        data_error("cannot write " + path.string());
    return out;
}

std::string_view display_name(Regime r)
{
    switch (r) {
    case Regime::ClearNet:
        return "ClearNet";
    case Regime::CamoNet:
        return "CamoNet";
    case Regime::ExpClearNet:
        return "ExpClearNet";
    case Regime::ExpCamoNet:
        return "ExpCamoNet";
    }
    return "";
}

std::string trained_on(Regime r)
{
    std::string s;
    for (ImageType t : regime_phases(r)) {
        if (!s.empty())
            s += " -> ";
        s += t == ImageType::Clear ? "Clear" : "Camo";
    }
    return s;
}

nlohmann::json vec_json(const Vector& v)
{
    return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json fit_json(const LinearFit& f)
{
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"sse", f.sse},
            {"degenerate", f.degenerate}};
}

void write_curve_rows(std::ostream& out, const GeneralizationCurve& c)
{
    for (const auto& p : c.points)
        out << c.class_id << ',' << to_string(c.center_kind) << ',' << p.sample_id << ',' << to_string(p.image_type)
            << ',' << format_double(p.distance) << ',' << format_double(p.activation) << '\n';
}

constexpr const char* kCurveHeader = "class_id,center_kind,sample_id,image_type,distance,activation\n";

}  // namespace

void write_json(const fs::path& path, const nlohmann::json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

nlohmann::json read_json(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        data_error("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        data_error(path.string() + ": " + e.what());
    }
}

nlohmann::json accuracy_report(const Classifier& model, const Dataset& dataset)
{
    nlohmann::json cells = nlohmann::json::array();
    for (Split s : {Split::Train, Split::Test})
        for (ImageType t : {ImageType::Clear, ImageType::Camo}) {
            const Evaluation e = evaluate(model, dataset, {t, s});
            cells.push_back({{"split", to_string(s)},
                             {"tested_on", to_string(t)},
                             {"n", e.num_samples},
                             {"accuracy", e.accuracy}});
        }
    return {{"network", display_name(model.regime)},
            {"regime", to_string(model.regime)},
            {"trained_on", trained_on(model.regime)},
            {"cells", cells}};
}

void write_accuracy_csv(const fs::path& path, const std::vector<nlohmann::json>& reports)
{
    auto out = open_out(path);
    out << "network,trained_on,split,tested_on,accuracy_percent\n";
    for (const char* split : {"test", "train"})
        for (const auto& r : reports)
            for (const auto& c : r.at("cells"))
                if (c.at("split") == split) {
                    char pct[32];
                    std::snprintf(pct, sizeof(pct), "%.2f", 100.0 * c.at("accuracy").get<double>());
                    out << r.at("network").get<std::string>() << ',' << r.at("trained_on").get<std::string>() << ','
                        << split << ',' << c.at("tested_on").get<std::string>() << ',' << pct << '\n';
                }
}

std::vector<fs::path> write_training_log(const fs::path& dir, const Classifier& model)
{
    const fs::path log_path = dir / "training_log.csv";
    auto out = open_out(log_path);
    out << "phase,epoch,learning_rate,mean_loss,train_accuracy\n";
    for (const auto& e : model.training_log)
        out << e.phase << ',' << e.epoch << ',' << format_double(e.learning_rate) << ',' << format_double(e.mean_loss)
            << ',' << format_double(e.train_accuracy) << '\n';
    const fs::path val_path = dir / "validation_log.csv";
    auto val = open_out(val_path);
    val << "phase,iteration,accuracy\n";
    for (const auto& v : model.validation_log)
        val << v.phase << ',' << v.iteration << ',' << format_double(v.accuracy) << '\n';
    return {log_path, val_path};
}

std::vector<fs::path> write_analysis(const fs::path& dir, const AnalysisResult& res, const PipelineConfig& cfg)
{
    std::vector<fs::path> files;
    const auto& rows = res.rows;
    const auto& emb = res.embedding;

    {
        const fs::path p = dir / "embedding.csv";
        auto out = open_out(p);
        out << "sample_id,class_id,image_type";
        for (Eigen::Index d = 0; d < emb.coords.cols(); ++d)
            out << ",dim" << d + 1;
        out << '\n';
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << rows.sample_ids[i] << ',' << rows.labels[i] << ',' << to_string(rows.image_types[i]);
            for (Eigen::Index d = 0; d < emb.coords.cols(); ++d)
                out << ',' << format_double(emb.coords(static_cast<Eigen::Index>(i), d));
            out << '\n';
        }
        files.push_back(p);
    }
    {
        nlohmann::json table = nlohmann::json::array();
        for (std::size_t i = 0; i < emb.spectrum.size(); ++i)
            table.push_back({{"component", i + 1},
                             {"variance_percent", 100.0 * emb.spectrum[i]},
                             {"difference", i == 0 ? nlohmann::json(nullptr) : nlohmann::json(emb.variance_differences[i - 1])}});
        nlohmann::json j = {{"method", to_string(cfg.analysis.method)},
                            {"algorithm", to_string(emb.method)},
                            {"metric", emb.metric ? nlohmann::json(to_string(*emb.metric)) : nlohmann::json(nullptr)},
                            {"dims", emb.coords.cols()},
                            {"rows", emb.coords.rows()},
                            {"warnings", emb.warnings}};
        if (emb.method == ReductionMethod::PCA) {
            j["variance_explained"] = emb.variance_explained;
            j["variance_table"] = table;
        } else {
            j["stress"] = emb.stress;
            j["initial_stress"] = emb.initial_stress;
            std::vector<double> top(emb.eigenvalues.data(),
                                    emb.eigenvalues.data() + std::min<Eigen::Index>(10, emb.eigenvalues.size()));
            j["leading_eigenvalues"] = top;
            if (emb.method == ReductionMethod::Smacof) {
                j["iterations"] = emb.iterations;
                j["converged"] = emb.converged;
                j["stress_history"] = emb.stress_history;
            }
        }
        const fs::path p = dir / "embedding.json";
        write_json(p, j);
        files.push_back(p);
    }
    {
        nlohmann::json subsets = nlohmann::json::array();
        for (const auto& sub : res.subsets) {
            nlohmann::json regions = nlohmann::json::array();
            for (const auto& r : sub.regions) {
                nlohmann::json hulls;
                for (std::size_t p = 0; p < 3; ++p) {
                    const auto proj = project(r.points, kPlanes[p]);
                    nlohmann::json verts = nlohmann::json::array();
                    std::vector<std::int64_t> ids;
                    for (auto idx : r.hulls[p]) {
                        verts.push_back({proj[idx].x(), proj[idx].y()});
                        ids.push_back(r.sample_ids[idx]);
                    }
                    hulls[std::string(to_string(kPlanes[p]))] = {{"sample_ids", ids}, {"vertices", verts}};
                }
                const auto& tc = r.true_center;
                regions.push_back({{"class_id", r.class_id},
                                   {"n", r.sample_ids.size()},
                                   {"centroid", vec_json(r.centroid)},
                                   {"true_center", vec_json(tc.center)},
                                   {"score", tc.score},
                                   {"centroid_score", tc.centroid_score},
                                   {"at_centroid", tc.at_centroid},
                                   {"degenerate", tc.degenerate},
                                   {"grid_lo", vec_json(tc.grid_lo)},
                                   {"grid_hi", vec_json(tc.grid_hi)},
                                   {"bbox_min", vec_json(r.bbox_min)},
                                   {"bbox_max", vec_json(r.bbox_max)},
                                   {"hulls", hulls}});
                if (cfg.analysis.export_surfaces && !tc.score_surface.empty()) {
                    fs::create_directories(dir / "surfaces");
                    char name[64];
                    std::snprintf(name, sizeof(name), "surface_%s_class%02d.csv",
                                  std::string(to_string(sub.image_type)).c_str(), r.class_id);
                    const fs::path p = dir / "surfaces" / name;
                    auto out = open_out(p);
                    out << "index";
                    for (Eigen::Index d = 0; d < tc.grid_lo.size(); ++d)
                        out << ",x" << d + 1;
                    out << ",score\n";
                    for (std::size_t idx = 0; idx < tc.score_surface.size(); ++idx) {
                        const Vector pt = lattice_point(tc.grid_lo, tc.grid_hi, tc.grid_resolution, idx);
                        out << idx;
                        for (Eigen::Index d = 0; d < pt.size(); ++d)
                            out << ',' << format_double(pt[d]);
                        out << ',' << format_double(tc.score_surface[idx]) << '\n';
                    }
                    files.push_back(p);
                }
            }
            subsets.push_back({{"image_type", to_string(sub.image_type)}, {"regions", regions}});
        }
        const auto& cs = cfg.center_search;
        nlohmann::json j = {{"grid",
                             {{"resolution", cs.grid_resolution},
                              {"box_expansion", cs.box_expansion},
                              {"criterion", to_string(cs.monotonicity_criterion)},
                              {"metric", to_string(cs.distance_metric)},
                              {"search_space", cfg.analysis.search_space == SearchSpace::Reduced ? "reduced" : "full"}}},
                            {"subsets", subsets}};
        const fs::path p = dir / "regions.json";
        write_json(p, j);
        files.push_back(p);
    }
    {
        const fs::path p = dir / "curves.csv";
        auto out = open_out(p);
        out << kCurveHeader;
        nlohmann::json fits = nlohmann::json::array();
        nlohmann::json bifs = nlohmann::json::array();
        for (const auto& sub : res.subsets)
            for (std::size_t i = 0; i < sub.curves.size(); ++i) {
                const auto& c = sub.curves[i];
                const auto& b = sub.bifurcations[i];
                write_curve_rows(out, c);
                fits.push_back({{"class_id", c.class_id},
                                {"image_type", to_string(sub.image_type)},
                                {"center_kind", to_string(c.center_kind)},
                                {"center", vec_json(c.center)},
                                {"n", c.points.size()},
                                {"fit", fit_json(c.fit)},
                                {"spearman_rho", optional_json(c.spearman_rho)},
                                {"degenerate", c.degenerate}});
                bifs.push_back({{"class_id", b.class_id},
                                {"image_type", to_string(sub.image_type)},
                                {"center_kind", to_string(c.center_kind)},
                                {"single", {{"slope", b.single.slope}, {"intercept", b.single.intercept}, {"sse", b.single_sse}}},
                                {"branches",
                                 {{{"slope", b.branches[0].slope}, {"intercept", b.branches[0].intercept}},
                                  {{"slope", b.branches[1].slope}, {"intercept", b.branches[1].intercept}}}},
                                {"assignment", b.assignment},
                                {"two_line_sse", b.two_line_sse},
                                {"iterations", b.iterations},
                                {"delta_bic", b.delta_bic},
                                {"bifurcated", b.bifurcated},
                                {"note", b.note}});
            }
        files.push_back(p);
        write_json(dir / "fits.json", fits);
        files.push_back(dir / "fits.json");
        write_json(dir / "bifurcation.json", bifs);
        files.push_back(dir / "bifurcation.json");
    }
    {
        const fs::path p = dir / "overlay.csv";
        auto out = open_out(p);
        out << kCurveHeader;
        nlohmann::json j = nlohmann::json::array();
        for (const auto& o : res.overlays) {
            write_curve_rows(out, o.clear);
            write_curve_rows(out, o.camo);
            j.push_back({{"class_id", o.clear.class_id},
                         {"center", vec_json(o.clear.center)},
                         {"clear_fit", fit_json(o.clear.fit)},
                         {"camo_fit", fit_json(o.camo.fit)},
                         {"clear_spearman_rho", optional_json(o.clear.spearman_rho)},
                         {"camo_spearman_rho", optional_json(o.camo.spearman_rho)},
                         {"clear_median_distance", o.clear_median_distance},
                         {"camo_median_distance", o.camo_median_distance},
                         {"clear_median_activation", o.clear_median_activation},
                         {"camo_median_activation", o.camo_median_activation}});
        }
        files.push_back(p);
        write_json(dir / "overlay.json", j);
        files.push_back(dir / "overlay.json");
    }
    {
        const auto& counts = res.evaluation.confusion.counts;
        const fs::path p = dir / "confusion.csv";
        auto out = open_out(p);
        out << "true_class";
        for (Eigen::Index c = 0; c < counts.cols(); ++c)
            out << ",pred" << c;
        out << '\n';
        for (Eigen::Index r = 0; r < counts.rows(); ++r) {
            out << r;
            for (Eigen::Index c = 0; c < counts.cols(); ++c)
                out << ',' << counts(r, c);
            out << '\n';
        }
        files.push_back(p);
    }
    {
        const fs::path p = dir / "g_matrix.csv";
        auto out = open_out(p);
        out << "class_id";
        for (int c : res.g_classes)
            out << ',' << c;
        out << '\n';
        for (std::size_t a = 0; a < res.g_classes.size(); ++a) {
            out << res.g_classes[a];
            for (std::size_t b = 0; b < res.g_classes.size(); ++b)
                out << ',' << format_double(res.g.g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
            out << '\n';
        }
        files.push_back(p);
    }
    {
        const fs::path p = dir / "gradient.csv";
        auto out = open_out(p);
        out << "class_i,class_j,distance,g\n";
        for (const auto& g : res.gradient.pairs)
            out << g.i << ',' << g.j << ',' << format_double(g.distance) << ',' << format_double(g.g) << '\n';
        files.push_back(p);
    }
    {
        nlohmann::json bif_classes = nlohmann::json::object();
        for (const auto& sub : res.subsets) {
            std::vector<int> ids;
            for (std::size_t i = 0; i < sub.curves.size(); ++i)
                if (sub.curves[i].center_kind == CenterKind::Centroid && sub.bifurcations[i].bifurcated)
                    ids.push_back(sub.curves[i].class_id);
            bif_classes[std::string(to_string(sub.image_type))] = ids;
        }
        nlohmann::json j = {{"rows", rows.size()},
                            {"classes", rows.num_classes()},
                            {"accuracy", res.evaluation.accuracy},
                            {"smoothing", res.g.smoothing},
                            {"gradient_spearman_rho", optional_json(res.gradient.spearman_rho)},
                            {"bifurcated_centroid_curves", bif_classes},
                            {"warnings", res.warnings}};
        const fs::path p = dir / "summary.json";
        write_json(p, j);
        files.push_back(p);
    }
    return files;
}

}  // namespace genlaw::artifacts
