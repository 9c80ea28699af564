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
#include <numeric>

#include "doctest.h"
#include "genlaw/geometry.hpp"
#include "genlaw/rng.hpp"
#include "oracles.hpp"

using namespace genlaw;

namespace {

std::vector<std::pair<double, double>> as_pairs(const std::vector<Point2>& pts)
{
    std::vector<std::pair<double, double>> out;
    for (const auto& p : pts)
        out.emplace_back(p.x(), p.y());
    return out;
}

Matrix uniform_points(Eigen::Index n, Eigen::Index d, std::uint64_t seed)
{
    Rng rng(seed);
    Matrix m(n, d);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            m(i, j) = rng.uniform();
    return m;
}

CenterSearchConfig coarse(int res = 9)
{
    CenterSearchConfig c;
    c.grid_resolution = res;
    return c;
}

}  // namespace

TEST_CASE("hull of a square with its center is the four corners, counter-clockwise")
{
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    const auto idx = convex_hull_indices(pts);
    CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(oracle::signed_area(as_pairs(convex_hull_2d(pts))) == doctest::Approx(1.0));
}

TEST_CASE("collinear and duplicate input degrade to a segment or a point")
{
    const std::vector<Point2> line{{0, 0}, {2, 2}, {1, 1}};
    CHECK(convex_hull_indices(line).size() == 2);
    const std::vector<Point2> same{{3, 1}, {3, 1}, {3, 1}};
    CHECK(convex_hull_indices(same).size() == 1);
    const auto seg = convex_hull_2d(line);
    CHECK(hull_contains(seg, Point2(0.5, 0.5)));
    CHECK_FALSE(hull_contains(seg, Point2(0.5, 0.6)));
}

TEST_CASE("edge points are excluded from the hull")
{
    const std::vector<Point2> pts{{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(convex_hull_indices(pts).size() == 4);
}

TEST_CASE("every random point lies inside its hull")
{
    Rng rng(17);
    std::vector<Point2> pts;
    for (int i = 0; i < 100; ++i)
        pts.emplace_back(rng.normal(), rng.normal());
    const auto hull = convex_hull_2d(pts);
    const auto poly = as_pairs(hull);
    for (const auto& p : pts) {
        CHECK(oracle::point_in_polygon(poly, p.x(), p.y(), 1e-12));
        CHECK(hull_contains(hull, p, 1e-12));
    }
    CHECK_FALSE(hull_contains(hull, Point2(100, 100)));
}

TEST_CASE("projection planes pick the right axes")
{
    Matrix m(1, 3);
    m << 1, 2, 3;
    CHECK(project(m, Plane::XY)[0] == Point2(1, 2));
    CHECK(project(m, Plane::XZ)[0] == Point2(1, 3));
    CHECK(project(m, Plane::YZ)[0] == Point2(2, 3));
}

TEST_CASE("centroid examples and translation equivariance")
{
    Matrix sq(4, 3);
    sq << 0, 0, 0, 2, 0, 0, 0, 2, 0, 2, 2, 0;
    CHECK(centroid(sq) == Eigen::Vector3d(1, 1, 0));
    Matrix one(1, 3);
    one << 4, 5, 6;
    CHECK(centroid(one) == Vector(one.row(0).transpose()));
    const Matrix pts = uniform_points(20, 3, 2);
    const Eigen::RowVector3d t(0.3, -7.0, 2.5);
    const Vector shifted = centroid(pts.rowwise() + t);
    CHECK((shifted - centroid(pts) - t.transpose()).norm() < 1e-12);
}

TEST_CASE("perfectly antitone activations score -1")
{
    const std::vector<double> d{1, 2, 3}, a{3, 2, 1};
    CHECK(monotonicity_score(d, a, MonotonicityCriterion::SpearmanRho) == doctest::Approx(-1.0));
    CHECK(monotonicity_score(d, a, MonotonicityCriterion::NegativeSlopeR2) == doctest::Approx(-1.0));
    const std::vector<double> up{1, 2, 3};
    CHECK(monotonicity_score(d, up, MonotonicityCriterion::NegativeSlopeR2) == doctest::Approx(1.0));
    const std::vector<double> flat{2, 2, 2};
    CHECK(monotonicity_score(d, flat, MonotonicityCriterion::SpearmanRho) == 0.0);
}

TEST_CASE("grid resolution must allow nesting")
{
    CHECK_THROWS_AS(coarse(25).validate(), Error);
    CHECK_THROWS_AS(coarse(4).validate(), Error);
    coarse(3).validate();
    coarse(33).validate();
}

TEST_CASE("coarse lattice points coincide with every other fine lattice point")
{
    const Vector lo = Vector::Constant(3, -0.37), hi = Vector::Constant(3, 1.91);
    for (std::size_t i = 0; i < 17; ++i) {
        const Vector c = lattice_point(lo, hi, 17, i);
        const Vector f = lattice_point(lo, hi, 33, 2 * i);
        CHECK(c == f);
    }
    CHECK(lattice_point(lo, hi, 9, 0) == lo);
    CHECK(lattice_point(lo, hi, 9, 9 * 9 * 9 - 1) == hi);
}

TEST_CASE("true center recovers a radial field")
{
    const Matrix pts = uniform_points(200, 3, 5);
    const Vector c_star = Eigen::Vector3d(0.31, 0.62, 0.47);
    std::vector<double> act;
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        act.push_back(std::exp(-(pts.row(i).transpose() - c_star).norm()));
    const auto r = find_true_center(pts, act, coarse(17));
    const double cell = ((r.grid_hi - r.grid_lo) / 16.0).norm();
    CHECK((r.center - c_star).norm() <= cell);
    CHECK(r.score <= -0.99);
    CHECK(r.score <= r.centroid_score);
    CHECK(r.score_surface.size() == 17u * 17u * 17u);
}

TEST_CASE("true center never scores worse than the centroid")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Matrix pts = uniform_points(15, 3, seed);
        Rng rng(seed + 1000);
        std::vector<double> act;
        for (int i = 0; i < 15; ++i)
            act.push_back(rng.normal());
        const auto r = find_true_center(pts, act, coarse());
        CHECK(r.score <= r.centroid_score);
        if (r.at_centroid)
            CHECK(r.center == r.centroid);
    }
}

TEST_CASE("true center ignores row order and thread count")
{
    const Matrix pts = uniform_points(40, 3, 9);
    Rng rng(77);
    std::vector<double> act;
    for (int i = 0; i < 40; ++i)
        act.push_back(rng.uniform());
    const auto base = find_true_center(pts, act, coarse());

    std::vector<std::size_t> perm(40);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::swap(perm[3], perm[17]);
    std::vector<double> act_p;
    for (auto i : perm)
        act_p.push_back(act[i]);
    const auto permuted = find_true_center(select_rows(pts, perm), act_p, coarse());
    CHECK(permuted.center == base.center);
    CHECK(permuted.score == base.score);

    auto threaded = coarse();
    threaded.threads = 4;
    const auto t = find_true_center(pts, act, threaded);
    CHECK(t.center == base.center);
    CHECK(t.score_surface == base.score_surface);
}

TEST_CASE("equal activations are degenerate and return the centroid")
{
    const Matrix pts = uniform_points(10, 3, 3);
    const std::vector<double> act(10, 0.5);
    const auto r = find_true_center(pts, act, coarse());
    CHECK(r.degenerate);
    CHECK(r.center == r.centroid);
    CHECK(r.score == 0.0);
}

TEST_CASE("regions carry hulls that contain their points in every plane")
{
    const Matrix pts = uniform_points(30, 3, 12);
    std::vector<double> act(30);
    std::vector<std::int64_t> ids(30);
    for (int i = 0; i < 30; ++i) {
        act[static_cast<std::size_t>(i)] = -pts.row(i).norm();
        ids[static_cast<std::size_t>(i)] = 100 + i;
    }
    const auto region = build_region(4, pts, pts, act, ids, std::vector<ImageType>(30, ImageType::Clear), coarse());
    CHECK(region.class_id == 4);
    CHECK(region.bbox_min == Vector(pts.colwise().minCoeff().transpose()));
    for (std::size_t p = 0; p < 3; ++p) {
        const auto proj = project(pts, kPlanes[p]);
        std::vector<Point2> hull;
        for (auto i : region.hulls[p])
            hull.push_back(proj[i]);
        for (const auto& q : proj)
            CHECK(hull_contains(hull, q, 1e-12));
    }
}

TEST_CASE("refining a nested grid never worsens the score")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix pts = uniform_points(25, 3, seed + 50);
        Rng rng(seed);
        std::vector<double> act;
        for (int i = 0; i < 25; ++i)
            act.push_back(rng.uniform() - pts.row(i).sum());
        double previous = 1.0;
        for (int res : {3, 5, 9, 17}) {
            const double s = find_true_center(pts, act, coarse(res)).score;
            CHECK(s <= previous);
            previous = s;
        }
    }
}
