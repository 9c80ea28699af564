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
#include "genlaw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "genlaw/stats.hpp"

namespace genlaw {

double cross(const Point2& o, const Point2& a, const Point2& b)
{
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

std::vector<std::size_t> convex_hull_indices(std::span<const Point2> points)
{
    if (points.empty())
        data_error("convex hull of an empty point set");
    for (const auto& p : points)
        if (!p.allFinite())
            data_error("convex hull: non-finite point");

    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        const auto& p = points[a];
        const auto& q = points[b];
        if (p.x() != q.x())
            return p.x() < q.x();
        if (p.y() != q.y())
            return p.y() < q.y();
        return a < b;
    };
    std::sort(order.begin(), order.end(), less);
    // Drop exact duplicates, keeping the lowest index.
    order.erase(std::unique(order.begin(), order.end(),
                            [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
                order.end());
    const std::size_t n = order.size();
    if (n == 1)
        return order;

    std::vector<std::size_t> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(points[hull[k - 2]], points[hull[k - 1]], points[order[i]]) <= 0.0)
            --k;
        hull[k++] = order[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(points[hull[k - 2]], points[hull[k - 1]], points[order[i]]) <= 0.0)
            --k;
        hull[k++] = order[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

std::vector<Point2> convex_hull_2d(std::span<const Point2> points)
{
    std::vector<Point2> out;
    for (auto i : convex_hull_indices(points))
        out.push_back(points[i]);
    return out;
}

bool hull_contains(std::span<const Point2> hull, const Point2& p, double tol)
{
    if (hull.empty())
        return false;
    if (hull.size() == 1)
        return (p - hull[0]).norm() <= tol;
    if (hull.size() == 2) {
        const Point2 ab = hull[1] - hull[0];
        const double len = ab.norm();
        if (std::abs(cross(hull[0], hull[1], p)) > tol * len)
            return false;
        const double t = (p - hull[0]).dot(ab);
        return t >= -tol * len && t <= ab.squaredNorm() + tol * len;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Point2& a = hull[i];
        const Point2& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < -tol * (b - a).norm())
            return false;
    }
    return true;
}

std::string_view to_string(Plane p)
{
    switch (p) {
    case Plane::XY:
        return "xy";
    case Plane::XZ:
        return "xz";
    case Plane::YZ:
        return "yz";
    }
    return "";
}

std::array<int, 2> plane_axes(Plane p)
{
    switch (p) {
    case Plane::XY:
        return {0, 1};
    case Plane::XZ:
        return {0, 2};
    case Plane::YZ:
        return {1, 2};
    }
    return {0, 1};
}

std::vector<Point2> project(const Matrix& points, Plane plane)
{
    const auto [a, b] = plane_axes(plane);
    std::vector<Point2> out;
    out.reserve(static_cast<std::size_t>(points.rows()));
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        out.emplace_back(points(i, a), points(i, b));
    return out;
}

Vector centroid(const Matrix& points)
{
    if (points.rows() == 0)
        data_error("centroid of an empty point set");
    return points.colwise().mean().transpose();
}

std::string_view to_string(MonotonicityCriterion c)
{
    return c == MonotonicityCriterion::SpearmanRho ? "spearman_rho" : "negative_slope_r2";
}

MonotonicityCriterion parse_criterion(std::string_view s)
{
    if (s == "spearman_rho")
        return MonotonicityCriterion::SpearmanRho;
    if (s == "negative_slope_r2")
        return MonotonicityCriterion::NegativeSlopeR2;
    config_error("unknown monotonicity criterion '" + std::string(s) + "'");
}

void CenterSearchConfig::validate() const
{
    if (grid_resolution < 2 || ((grid_resolution - 1) & (grid_resolution - 2)) != 0)
        config_error("grid_resolution must be 2^j + 1 (2, 3, 5, 9, 17, 33, ...)");
    if (!(box_expansion >= 0.0) || !std::isfinite(box_expansion))
        config_error("box_expansion must be >= 0");
    if (threads < 0)
        config_error("threads must be >= 0");
}

double monotonicity_score(std::span<const double> distances, std::span<const double> activations,
                          MonotonicityCriterion criterion)
{
    if (criterion == MonotonicityCriterion::SpearmanRho)
        return spearman_rho(distances, activations).value_or(0.0);
    const LinearFit fit = fit_line(distances, activations);
    if (fit.degenerate)
        return 0.0;
    return fit.slope < 0.0 ? -fit.r_squared : fit.r_squared;
}

Vector lattice_point(const Vector& lo, const Vector& hi, int resolution, std::size_t index)
{
    const auto dims = lo.size();
    Vector p(dims);
    for (Eigen::Index a = dims; a-- > 0;) {
        const auto i = index % static_cast<std::size_t>(resolution);
        index /= static_cast<std::size_t>(resolution);
        // i / (r - 1) is the same double for nested power-of-two grids.
        const double t = static_cast<double>(i) / static_cast<double>(resolution - 1);
        p[a] = (1.0 - t) * lo[a] + t * hi[a];
    }
    return p;
}

namespace {

constexpr double kMaxLatticePoints = 2.0e7;

struct Candidate {
    double score;
    double to_centroid;
    std::size_t index;

    bool operator<(const Candidate& o) const
    {
        if (score != o.score)
            return score < o.score;
        if (to_centroid != o.to_centroid)
            return to_centroid < o.to_centroid;
        return index < o.index;
    }
};

}  // namespace

CenterSearchResult find_true_center(const Matrix& points, std::span<const double> activations,
                                    const CenterSearchConfig& config)
{
    config.validate();
    const Eigen::Index m = points.rows();
    const Eigen::Index dims = points.cols();
    if (m < 3)
        data_error("true-center search needs at least 3 points");
    if (static_cast<Eigen::Index>(activations.size()) != m)
        data_error("true-center search: activations not aligned with points");
    if (!points.allFinite())
        data_error("true-center search: non-finite coordinates");
    const double lattice = std::pow(static_cast<double>(config.grid_resolution), static_cast<double>(dims));
    if (lattice > kMaxLatticePoints)
        config_error("true-center lattice of " + format_double(lattice) + " points is too large; lower grid_resolution");

    // Canonical row order makes every floating-point sum order-independent.
    std::vector<std::size_t> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        for (Eigen::Index c = 0; c < dims; ++c)
            if (points(static_cast<Eigen::Index>(a), c) != points(static_cast<Eigen::Index>(b), c))
                return points(static_cast<Eigen::Index>(a), c) < points(static_cast<Eigen::Index>(b), c);
        return activations[a] < activations[b];
    });
    Matrix pts(m, dims);
    std::vector<double> acts(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        pts.row(i) = points.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
        acts[static_cast<std::size_t>(i)] = activations[order[static_cast<std::size_t>(i)]];
    }
    const Matrix pts_t = pts.transpose();

    CenterSearchResult res;
    res.centroid = centroid(pts);
    res.grid_resolution = config.grid_resolution;
    const Vector mn = pts.colwise().minCoeff().transpose();
    const Vector mx = pts.colwise().maxCoeff().transpose();
    const Vector pad = (mx - mn) * config.box_expansion;
    res.grid_lo = mn - pad;
    res.grid_hi = mx + pad;

    if (std::all_of(acts.begin(), acts.end(), [&](double a) { return a == acts.front(); })) {
        res.degenerate = true;
        res.center = res.centroid;
        res.at_centroid = true;
        return res;
    }

    auto score_at = [&](const Vector& c, std::vector<double>& dist) {
        for (Eigen::Index i = 0; i < m; ++i)
            dist[static_cast<std::size_t>(i)] = distance(pts_t.col(i), c, config.distance_metric);
        return monotonicity_score(dist, acts, config.monotonicity_criterion);
    };

    const auto total = static_cast<std::size_t>(lattice);
    res.score_surface.assign(total, 0.0);
    auto work = [&](std::size_t first, std::size_t stride) {
        std::vector<double> dist(static_cast<std::size_t>(m));
        for (std::size_t idx = first; idx < total; idx += stride)
            res.score_surface[idx] = score_at(lattice_point(res.grid_lo, res.grid_hi, config.grid_resolution, idx), dist);
    };
    int threads = config.threads;
    if (threads == 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, static_cast<std::size_t>(t), static_cast<std::size_t>(threads));
        for (auto& th : pool)
            th.join();
    }

    std::vector<double> dist(static_cast<std::size_t>(m));
    res.centroid_score = score_at(res.centroid, dist);
    Candidate best{res.centroid_score, 0.0, total};
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (res.score_surface[idx] > best.score)
            continue;
        const Vector p = lattice_point(res.grid_lo, res.grid_hi, config.grid_resolution, idx);
        const Candidate c{res.score_surface[idx], distance(p, res.centroid, config.distance_metric), idx};
        if (c < best)
            best = c;
    }
    res.score = best.score;
    res.at_centroid = best.index == total;
    res.center = res.at_centroid ? res.centroid : lattice_point(res.grid_lo, res.grid_hi, config.grid_resolution, best.index);
    return res;
}

ClassRegion build_region(int class_id, const Matrix& points, const Matrix& search_points,
                         std::vector<double> activations, std::vector<std::int64_t> sample_ids,
                         std::vector<ImageType> image_types, const CenterSearchConfig& config)
{
    if (points.cols() != 3)
        data_error("region points must be 3-dimensional");
    const auto m = static_cast<std::size_t>(points.rows());
    if (search_points.rows() != points.rows() || activations.size() != m || sample_ids.size() != m ||
        image_types.size() != m)
        data_error("region inputs are not aligned");
    ClassRegion r;
    r.class_id = class_id;
    r.points = points;
    r.search_points = search_points;
    r.activations = std::move(activations);
    r.sample_ids = std::move(sample_ids);
    r.image_types = std::move(image_types);
    r.bbox_min = points.colwise().minCoeff().transpose();
    r.bbox_max = points.colwise().maxCoeff().transpose();
    for (std::size_t p = 0; p < 3; ++p) {
        const auto proj = project(points, kPlanes[p]);
        r.hulls[p] = convex_hull_indices(proj);
    }
    r.true_center = find_true_center(search_points, r.activations, config);
    r.centroid = r.true_center.centroid;
    return r;
}

}  // namespace genlaw
