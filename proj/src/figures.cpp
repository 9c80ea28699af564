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
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "artifacts.hpp"
#include "csv.hpp"
#include "svg.hpp"

namespace genlaw::artifacts {

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t col(std::string_view name) const
    {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            data_error("column '" + std::string(name) + "' missing");
        return static_cast<std::size_t>(it - header.begin());
    }
};

Table read_table(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        data_error("missing analysis artifact " + path.string());
    Table t;
    std::string line;
    if (!std::getline(in, line))
        data_error(path.string() + ": empty file");
    t.header = csv::split(line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        t.rows.push_back(csv::split(line));
        if (t.rows.back().size() != t.header.size())
            data_error(path.string() + ": row " + std::to_string(t.rows.size()) + " has the wrong field count");
    }
    return t;
}

std::string class_attrs(int class_id, std::string_view subset)
{
    return "data-class=\"" + std::to_string(class_id) + "\" data-subset=\"" + std::string(subset) + "\"";
}

std::string class_label(int class_id)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "class %02d", class_id);
    return buf;
}

struct CurvePts {
    std::vector<double> d, a;
};

void extend(double& lo, double& hi, const std::vector<double>& v)
{
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
}

constexpr std::string_view kClearColor = "#1f77b4";
constexpr std::string_view kCamoColor = "#d62728";

std::string_view subset_color(std::string_view subset) { return subset == "clear" ? kClearColor : kCamoColor; }

fs::path regions_figure(const fs::path& analysis_dir, const fs::path& out_dir, Plane plane)
{
    const Table emb = read_table(analysis_dir / "embedding.csv");
    const auto regions = read_json(analysis_dir / "regions.json");
    const auto axes = plane_axes(plane);
    const std::size_t cx = emb.col("dim" + std::to_string(axes[0] + 1));
    const std::size_t cy = emb.col("dim" + std::to_string(axes[1] + 1));
    const std::size_t cc = emb.col("class_id"), ct = emb.col("image_type");
    const std::string plane_name(to_string(plane));

    // Only classes that received a region are drawn.
    std::map<std::string, std::set<int>> drawn;
    for (const auto& sub : regions.at("subsets"))
        for (const auto& r : sub.at("regions"))
            drawn[sub.at("image_type").get<std::string>()].insert(r.at("class_id").get<int>());

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& row : emb.rows) {
        const double x = parse_double(row[cx]), y = parse_double(row[cy]);
        xlo = std::min(xlo, x), xhi = std::max(xhi, x);
        ylo = std::min(ylo, y), yhi = std::max(yhi, y);
    }
    if (emb.rows.empty())
        xlo = ylo = 0.0, xhi = yhi = 1.0;

    const std::string axis_x = "dim" + std::to_string(axes[0] + 1);
    const std::string axis_y = "dim" + std::to_string(axes[1] + 1);
    svg::Document doc(900, 470);
    doc.text(450, 22, "Class regions, " + plane_name + " plane", 14, "middle");
    double px = 70;
    for (const char* subset : {"clear", "camo"}) {
        const auto panel = svg::make_panel(px, 60, 360, 360, xlo, xhi, ylo, yhi);
        panel.frame(doc, std::string(subset) + " test samples", axis_x, axis_y);
        for (const auto& row : emb.rows) {
            const int c = static_cast<int>(parse_int(row[cc]));
            if (row[ct] != subset || !drawn[subset].count(c))
                continue;
            doc.circle(panel.sx(parse_double(row[cx])), panel.sy(parse_double(row[cy])), 2.2, svg::color(c),
                       class_attrs(c, subset));
        }
        for (const auto& sub : regions.at("subsets")) {
            if (sub.at("image_type") != subset)
                continue;
            for (const auto& r : sub.at("regions")) {
                const int c = r.at("class_id").get<int>();
                std::vector<std::pair<double, double>> pts;
                for (const auto& v : r.at("hulls").at(plane_name).at("vertices"))
                    pts.emplace_back(panel.sx(v.at(0).get<double>()), panel.sy(v.at(1).get<double>()));
                doc.polygon(pts, svg::color(c), class_attrs(c, subset));
            }
        }
        px += 450;
    }
    const fs::path out = out_dir / ("regions_" + plane_name + ".svg");
    doc.save(out);
    return out;
}

void draw_fit(svg::Document& doc, const svg::Panel& p, const nlohmann::json& fit, std::string_view color)
{
    const double slope = fit.at("slope").get<double>(), intercept = fit.at("intercept").get<double>();
    const double x0 = p.sx.d0, x1 = p.sx.d1;
    const double y0 = std::clamp(intercept + slope * x0, p.sy.d0, p.sy.d1);
    const double y1 = std::clamp(intercept + slope * x1, p.sy.d0, p.sy.d1);
    // Clamping keeps the segment inside the panel; recover matching x values.
    const auto x_at = [&](double y, double fallback) { return slope == 0.0 ? fallback : (y - intercept) / slope; };
    doc.line(p.sx(x_at(y0, x0)), p.sy(y0), p.sx(x_at(y1, x1)), p.sy(y1), color, 1.5);
}

std::string r2_label(const nlohmann::json& fit, std::string_view prefix)
{
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%sR^2 = %s, slope = %s", std::string(prefix).c_str(),
                  svg::num(fit.at("r_squared").get<double>()).c_str(), svg::num(fit.at("slope").get<double>()).c_str());
    return buf;
}

std::vector<fs::path> curve_figures(const fs::path& analysis_dir, const fs::path& out_dir)
{
    const Table curves = read_table(analysis_dir / "curves.csv");
    const Table overlay = read_table(analysis_dir / "overlay.csv");
    const auto fits = read_json(analysis_dir / "fits.json");
    const auto overlay_fits = read_json(analysis_dir / "overlay.json");

    // (class, center_kind, subset) -> points
    using Key = std::tuple<int, std::string, std::string>;
    const auto collect = [](const Table& t) {
        std::map<Key, CurvePts> out;
        const auto cc = t.col("class_id"), ck = t.col("center_kind"), ct = t.col("image_type");
        const auto cd = t.col("distance"), ca = t.col("activation");
        for (const auto& row : t.rows) {
            auto& p = out[{static_cast<int>(parse_int(row[cc])), row[ck], row[ct]}];
            p.d.push_back(parse_double(row[cd]));
            p.a.push_back(parse_double(row[ca]));
        }
        return out;
    };
    const auto curve_pts = collect(curves);
    const auto overlay_pts = collect(overlay);

    std::map<int, std::vector<const nlohmann::json*>> fits_by_class;
    for (const auto& f : fits)
        fits_by_class[f.at("class_id").get<int>()].push_back(&f);
    std::map<int, const nlohmann::json*> overlay_by_class;
    for (const auto& o : overlay_fits)
        overlay_by_class[o.at("class_id").get<int>()] = &o;

    std::vector<fs::path> files;
    for (const auto& [class_id, class_fits] : fits_by_class) {
        svg::Document doc(1200, 440);
        doc.text(600, 22, class_label(class_id) + ": activation vs. distance", 14, "middle");
        double px = 70;
        for (const char* kind : {"centroid", "true_center"}) {
            double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
            bool any = false;
            for (const char* subset : {"clear", "camo"}) {
                const auto it = curve_pts.find({class_id, kind, subset});
                if (it == curve_pts.end())
                    continue;
                any = true;
                extend(xlo, xhi, it->second.d);
                extend(ylo, yhi, it->second.a);
            }
            if (any) {
                const auto panel = svg::make_panel(px, 60, 300, 300, xlo, xhi, ylo, yhi);
                panel.frame(doc, std::string(kind == std::string_view("centroid") ? "from centroid" : "from true center"),
                            "distance", "activation");
                double ty = 78;
                for (const char* subset : {"clear", "camo"}) {
                    const auto it = curve_pts.find({class_id, kind, subset});
                    if (it == curve_pts.end())
                        continue;
                    for (std::size_t i = 0; i < it->second.d.size(); ++i)
                        doc.circle(panel.sx(it->second.d[i]), panel.sy(it->second.a[i]), 2.2, subset_color(subset),
                                   class_attrs(class_id, subset));
                    if (kind == std::string_view("true_center"))
                        for (const auto* f : class_fits)
                            if (f->at("center_kind") == kind && f->at("image_type") == subset) {
                                draw_fit(doc, panel, f->at("fit"), subset_color(subset));
                                doc.text(panel.x + panel.w - 6, ty, r2_label(f->at("fit"), std::string(subset) + ": "), 9,
                                         "end");
                                ty += 12;
                            }
                }
            }
            px += 400;
        }
        if (const auto it = overlay_by_class.find(class_id); it != overlay_by_class.end()) {
            double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
            for (const char* subset : {"clear", "camo"})
                if (const auto p = overlay_pts.find({class_id, "true_center", subset}); p != overlay_pts.end()) {
                    extend(xlo, xhi, p->second.d);
                    extend(ylo, yhi, p->second.a);
                }
            if (xlo <= xhi) {
                const auto panel = svg::make_panel(px, 60, 300, 300, xlo, xhi, ylo, yhi);
                panel.frame(doc, "clear and camo vs. clear true center", "distance", "activation");
                double ty = 78;
                for (const char* subset : {"clear", "camo"}) {
                    const auto p = overlay_pts.find({class_id, "true_center", subset});
                    if (p == overlay_pts.end())
                        continue;
                    for (std::size_t i = 0; i < p->second.d.size(); ++i)
                        doc.circle(panel.sx(p->second.d[i]), panel.sy(p->second.a[i]), 2.2, subset_color(subset),
                                   class_attrs(class_id, subset));
                    const auto& fit = it->second->at(std::string(subset) + "_fit");
                    draw_fit(doc, panel, fit, subset_color(subset));
                    doc.text(panel.x + panel.w - 6, ty, r2_label(fit, std::string(subset) + ": "), 9, "end");
                    ty += 12;
                }
            }
        }
        char name[48];
        std::snprintf(name, sizeof(name), "curve_class%02d.svg", class_id);
        files.push_back(out_dir / name);
        doc.save(files.back());
    }
    return files;
}

fs::path gradient_figure(const fs::path& analysis_dir, const fs::path& out_dir)
{
    const Table t = read_table(analysis_dir / "gradient.csv");
    const auto summary = read_json(analysis_dir / "summary.json");
    const auto cd = t.col("distance"), cg = t.col("g");
    std::vector<double> d, g;
    for (const auto& row : t.rows) {
        d.push_back(parse_double(row[cd]));
        g.push_back(parse_double(row[cg]));
    }
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
    if (!d.empty()) {
        xlo = ylo = 1e300;
        xhi = yhi = -1e300;
        extend(xlo, xhi, d);
        extend(ylo, yhi, g);
    }
    svg::Document doc(520, 470);
    const auto panel = svg::make_panel(80, 60, 400, 360, xlo, xhi, ylo, yhi);
    panel.frame(doc, "Generalization vs. class-center distance", "distance d_ij", "g_ij");
    for (std::size_t i = 0; i < d.size(); ++i)
        doc.circle(panel.sx(d[i]), panel.sy(g[i]), 2.5, "#333333");
    const auto& rho = summary.at("gradient_spearman_rho");
    doc.text(panel.x + panel.w - 6, 78, "Spearman rho = " + (rho.is_null() ? std::string("n/a") : svg::num(rho.get<double>())),
             10, "end");
    const fs::path out = out_dir / "gradient.svg";
    doc.save(out);
    return out;
}

}  // namespace

std::vector<fs::path> write_figures(const fs::path& analysis_dir, const fs::path& out_dir)
{
    std::vector<fs::path> files;
    for (Plane p : kPlanes)
        files.push_back(regions_figure(analysis_dir, out_dir, p));
    for (auto& f : curve_figures(analysis_dir, out_dir))
        files.push_back(std::move(f));
    files.push_back(gradient_figure(analysis_dir, out_dir));
    return files;
}

}  // namespace genlaw::artifacts
