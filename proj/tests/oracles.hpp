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
#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Cyclic Jacobi rotations; eigenvalues sorted descending, vectors as columns.
inline std::pair<Vec, Mat> jacobi_eigen(Mat a, int sweeps = 100)
{
    const Eigen::Index n = a.rows();
    Mat v = Mat::Identity(n, n);
    for (int s = 0; s < sweeps; ++s) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off < 1e-30)
            break;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), sn = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
            }
    }
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x) > a(y, y); });
    Vec vals(n);
    Mat vecs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        vals[i] = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
        vecs.col(i) = v.col(order[static_cast<std::size_t>(i)]);
    }
    return {vals, vecs};
}

inline Mat sample_covariance(const Mat& x)
{
    const Mat c = x.rowwise() - x.colwise().mean();
    return c.transpose() * c / static_cast<double>(x.rows() - 1);
}

/// Per-pair distance, written out loop by loop.
inline double pair_distance(const Mat& x, Eigen::Index i, Eigen::Index j, bool manhattan)
{
    double s = 0.0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double d = x(i, c) - x(j, c);
        s += manhattan ? std::abs(d) : d * d;
    }
    return manhattan ? s : std::sqrt(s);
}

/// Slope and intercept from the 2x2 normal equations.
inline std::pair<double, double> normal_equations(const std::vector<double>& x, const std::vector<double>& y)
{
    Eigen::Matrix2d xtx = Eigen::Matrix2d::Zero();
    Eigen::Vector2d xty = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Eigen::Vector2d row(1.0, x[i]);
        xtx += row * row.transpose();
        xty += row * y[i];
    }
    const Eigen::Vector2d beta = xtx.ldlt().solve(xty);
    return {beta[1], beta[0]};
}

inline double line_sse(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() < 2)
        return 0.0;
    const auto [b, a] = normal_equations(x, y);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += (y[i] - a - b * x[i]) * (y[i] - a - b * x[i]);
    return s;
}

/// Smallest total SSE over every split of the points into two groups with
/// at least `min_size` members each.
inline double best_two_line_sse(const std::vector<double>& x, const std::vector<double>& y, std::size_t min_size)
{
    const std::size_t n = x.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (mask & 1)  // symmetry: point 0 always in group 0
            continue;
        std::vector<double> x0, y0, x1, y1;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                x1.push_back(x[i]);
                y1.push_back(y[i]);
            } else {
                x0.push_back(x[i]);
                y0.push_back(y[i]);
            }
        }
        if (x0.size() < min_size || x1.size() < min_size)
            continue;
        best = std::min(best, line_sse(x0, y0) + line_sse(x1, y1));
    }
    return best;
}

/// Even-odd ray casting; points within `tol` of an edge count as inside.
inline bool point_in_polygon(const std::vector<std::pair<double, double>>& poly, double px, double py, double tol)
{
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [ax, ay] = poly[i];
        const auto [bx, by] = poly[(i + 1) % n];
        const double dx = bx - ax, dy = by - ay;
        const double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = ax + t * dx - px, ey = ay + t * dy - py;
        if (std::sqrt(ex * ex + ey * ey) <= tol)
            return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto [xi, yi] = poly[i];
        const auto [xj, yj] = poly[j];
        if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi)
            inside = !inside;
    }
    return inside;
}

inline double signed_area(const std::vector<std::pair<double, double>>& poly)
{
    double s = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto [ax, ay] = poly[i];
        const auto [bx, by] = poly[(i + 1) % poly.size()];
        s += ax * by - bx * ay;
    }
    return 0.5 * s;
}

}  // namespace oracle
