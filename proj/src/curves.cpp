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
#include "genlaw/curves.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace genlaw {

std::string_view to_string(CenterKind k) { return k == CenterKind::Centroid ? "centroid" : "true_center"; }

std::vector<double> GeneralizationCurve::distances() const
{
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.distance);
    return out;
}

std::vector<double> GeneralizationCurve::activations() const
{
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points)
        out.push_back(p.activation);
    return out;
}

CurveSamples samples_of(const ClassRegion& region)
{
    return {region.search_points, region.activations, region.image_types, region.sample_ids};
}

GeneralizationCurve curve_from_samples(int class_id, CenterKind kind, const Vector& center,
                                       const CurveSamples& samples, Metric metric)
{
    const auto n = samples.size();
    if (static_cast<std::size_t>(samples.coords.rows()) != n || samples.image_types.size() != n ||
        samples.sample_ids.size() != n)
        data_error("curve samples are not aligned");
    if (samples.coords.cols() != center.size())
        data_error("curve center dimension does not match sample coordinates");

    GeneralizationCurve c;
    c.class_id = class_id;
    c.center_kind = kind;
    c.center = center;
    for (std::size_t i = 0; i < n; ++i) {
        const Vector row = samples.coords.row(static_cast<Eigen::Index>(i)).transpose();
        c.points.push_back({distance(row, center, metric), samples.activations[i], samples.image_types[i],
                            samples.sample_ids[i]});
    }
    const auto d = c.distances();
    const auto a = c.activations();
    c.fit = fit_line(d, a);
    c.spearman_rho = spearman_rho(d, a);
    c.degenerate = n < 2 || std::all_of(a.begin(), a.end(), [&](double v) { return v == a.front(); });
    return c;
}

GeneralizationCurve build_curve(const ClassRegion& region, CenterKind kind, Metric metric)
{
    if (region.activations.size() < 2)
        data_error("a generalization curve needs at least 2 points");
    const Vector& center = kind == CenterKind::Centroid ? region.centroid : region.true_center.center;
    return curve_from_samples(region.class_id, kind, center, samples_of(region), metric);
}

Overlay overlay_curve(int class_id, const Vector& clear_center, const CurveSamples& clear, const CurveSamples& camo,
                      Metric metric)
{
    if (camo.size() == 0)
        data_error("overlay: class " + std::to_string(class_id) + " has no camouflaged samples");
    if (clear.size() == 0)
        data_error("overlay: class " + std::to_string(class_id) + " has no clear samples");
    Overlay o;
    o.clear = curve_from_samples(class_id, CenterKind::TrueCenter, clear_center, clear, metric);
    o.camo = curve_from_samples(class_id, CenterKind::TrueCenter, clear_center, camo, metric);
    o.clear_median_distance = median(o.clear.distances());
    o.camo_median_distance = median(o.camo.distances());
    o.clear_median_activation = median(o.clear.activations());
    o.camo_median_activation = median(o.camo.activations());
    return o;
}

namespace {

struct BranchFit {
    LineBranch line;
    std::size_t count = 0;
};

BranchFit fit_subset(const std::vector<double>& d, const std::vector<double>& a, const std::vector<int>& assign,
                     int branch)
{
    std::vector<double> x, y;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (assign[i] == branch) {
            x.push_back(d[i]);
            y.push_back(a[i]);
        }
    const LinearFit f = fit_line(x, y);
    return {{f.slope, f.intercept}, x.size()};
}

double residual(const LineBranch& l, double x, double y)
{
    const double r = y - (l.intercept + l.slope * x);
    return r * r;
}

double gaussian_bic(double sse, double floor, std::size_t n, int params)
{
    const double nn = static_cast<double>(n);
    return nn * std::log(std::max(sse, floor) / nn) + params * std::log(nn);
}

}  // namespace

BifurcationReport detect_bifurcation(const GeneralizationCurve& curve, int max_iter)
{
    BifurcationReport rep;
    rep.class_id = curve.class_id;
    const auto d = curve.distances();
    const auto a = curve.activations();
    const std::size_t n = d.size();

    const LinearFit single = fit_line(d, a);
    rep.single = {single.slope, single.intercept};
    rep.single_sse = single.sse;
    rep.branches = {rep.single, rep.single};
    rep.two_line_sse = single.sse;
    rep.assignment.assign(n, 0);
    if (n < 8) {
        rep.note = "fewer than 8 points";
        return rep;
    }

    // Start from points above / below the single line.
    for (std::size_t i = 0; i < n; ++i)
        rep.assignment[i] = a[i] - (single.intercept + single.slope * d[i]) >= 0.0 ? 0 : 1;

    std::array<BranchFit, 2> fits{};
    bool stable = false;
    for (int it = 0; it < max_iter && !stable; ++it) {
        fits = {fit_subset(d, a, rep.assignment, 0), fit_subset(d, a, rep.assignment, 1)};
        rep.iterations = it + 1;
        if (fits[0].count < 2 || fits[1].count < 2)
            break;
        stable = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double r0 = residual(fits[0].line, d[i], a[i]);
            const double r1 = residual(fits[1].line, d[i], a[i]);
            const int want = r0 < r1 ? 0 : (r1 < r0 ? 1 : rep.assignment[i]);
            if (want != rep.assignment[i]) {
                rep.assignment[i] = want;
                stable = false;
            }
        }
    }
    fits = {fit_subset(d, a, rep.assignment, 0), fit_subset(d, a, rep.assignment, 1)};

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sse += residual(fits[static_cast<std::size_t>(rep.assignment[i])].line, d[i], a[i]);
    if (sse <= single.sse) {
        rep.branches = {fits[0].line, fits[1].line};
        rep.two_line_sse = sse;
    }

    double mean = 0.0, sst = 0.0;
    for (double v : a)
        mean += v;
    mean /= static_cast<double>(n);
    for (double v : a)
        sst += (v - mean) * (v - mean);
    const double floor = 1e-12 * sst + 1e-300;
    rep.delta_bic = gaussian_bic(rep.single_sse, floor, n, 3) - gaussian_bic(rep.two_line_sse, floor, n, 5);

    if (std::min(fits[0].count, fits[1].count) < static_cast<std::size_t>(kMinBranchPoints)) {
        rep.note = "a branch has fewer than 4 points";
        return rep;
    }
    const bool opposite = rep.branches[0].slope * rep.branches[1].slope < 0.0;
    rep.bifurcated = rep.delta_bic > kBifurcationDeltaBic && opposite;
    if (!rep.bifurcated)
        rep.note = rep.delta_bic > kBifurcationDeltaBic ? "branch slopes share a sign" : "delta BIC below threshold";
    return rep;
}

GeneralizationMatrix shepard_g(const ConfusionMatrix& confusion, double alpha)
{
    const int k = confusion.size();
    if (confusion.counts.cols() != k || k < 1)
        data_error("shepard_g: confusion matrix must be square");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        config_error("shepard_g: smoothing must be >= 0");

    GeneralizationMatrix out;
    out.source_confusion = confusion;
    out.smoothing = alpha;
    out.p.resize(k, k);
    for (int j = 0; j < k; ++j) {
        const double total = static_cast<double>(confusion.counts.row(j).sum()) + k * alpha;
        if (total <= 0.0)
            data_error("shepard_g: class " + std::to_string(j) + " has no samples and smoothing is 0");
        // p(i, j): response learned for class i given to a stimulus of class j.
        for (int i = 0; i < k; ++i)
            out.p(i, j) = (static_cast<double>(confusion.counts(j, i)) + alpha) / total;
    }
    for (int i = 0; i < k; ++i)
        if (out.p(i, i) <= 0.0)
            numerical_error("shepard_g: p_ii is zero for class " + std::to_string(i) +
                            "; use a positive smoothing");

    out.g = Matrix::Identity(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            const double v = std::sqrt(out.p(i, j) * out.p(j, i) / (out.p(i, i) * out.p(j, j)));
            out.g(i, j) = v;
            out.g(j, i) = v;
        }
    return out;
}

GradientTable plot_gradient(const GeneralizationMatrix& g, const Matrix& class_distances)
{
    const auto k = g.g.rows();
    if (class_distances.rows() != k || class_distances.cols() != k)
        data_error("plot_gradient: distance matrix is " + std::to_string(class_distances.rows()) + "x" +
                   std::to_string(class_distances.cols()) + " but g is " + std::to_string(k) + "x" +
                   std::to_string(k));
    GradientTable t;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j)
            t.pairs.push_back({static_cast<int>(i), static_cast<int>(j), class_distances(i, j), g.g(i, j)});
    std::sort(t.pairs.begin(), t.pairs.end(), [](const GradientPair& x, const GradientPair& y) {
        return std::tie(x.distance, x.i, x.j) < std::tie(y.distance, y.i, y.j);
    });
    std::vector<double> ds, gs;
    for (const auto& p : t.pairs) {
        ds.push_back(p.distance);
        gs.push_back(p.g);
    }
    t.spearman_rho = spearman_rho(ds, gs);
    return t;
}

}  // namespace genlaw
