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
#include "doctest.h"
#include "genlaw/curves.hpp"
#include "genlaw/rng.hpp"
#include "oracles.hpp"

using namespace genlaw;

namespace {

GeneralizationCurve curve_of(const std::vector<double>& d, const std::vector<double>& a)
{
    GeneralizationCurve c;
    for (std::size_t i = 0; i < d.size(); ++i)
        c.points.push_back({d[i], a[i], ImageType::Clear, static_cast<std::int64_t>(i)});
    c.fit = fit_line(d, a);
    c.spearman_rho = spearman_rho(d, a);
    return c;
}

using Counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace

TEST_CASE("average ranks share ties")
{
    const std::vector<double> v{10, 20, 20, 5};
    CHECK(average_ranks(v) == std::vector<double>{2, 3.5, 3.5, 1});
}

TEST_CASE("spearman and pearson edge cases")
{
    const std::vector<double> x{1, 2, 3, 4}, y{1, 4, 9, 16}, flat{2, 2, 2, 2};
    CHECK(*spearman_rho(x, y) == doctest::Approx(1.0));
    CHECK_FALSE(spearman_rho(x, flat).has_value());
    CHECK_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}).has_value());
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("an exact line fits with R^2 = 1")
{
    std::vector<double> d, a;
    for (int i = 0; i < 10; ++i) {
        d.push_back(0.3 * i);
        a.push_back(5.0 - 2.0 * d.back());
    }
    const auto f = fit_line(d, a);
    CHECK(f.slope == doctest::Approx(-2.0));
    CHECK(f.intercept == doctest::Approx(5.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK_FALSE(f.degenerate);
}

TEST_CASE("R^2 is invariant under positive affine rescaling of distance")
{
    Rng rng(4);
    std::vector<double> d, a, d2;
    for (int i = 0; i < 25; ++i) {
        d.push_back(rng.uniform());
        a.push_back(1.0 - d.back() + 0.3 * rng.normal());
        d2.push_back(3.0 * d.back() + 7.0);
    }
    CHECK(fit_line(d, a).r_squared == doctest::Approx(fit_line(d2, a).r_squared).epsilon(1e-12));
    CHECK(fit_line(d, a).r_squared == doctest::Approx(std::pow(*pearson(d, a), 2)).epsilon(1e-12));
}

TEST_CASE("least squares matches the normal equations")
{
    Rng rng(8);
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(rng.uniform(-3, 3));
        y.push_back(0.7 * x.back() - 1.2 + rng.normal());
    }
    const auto f = fit_line(x, y);
    const auto [slope, intercept] = oracle::normal_equations(x, y);
    CHECK(std::abs(f.slope - slope) < 1e-10);
    CHECK(std::abs(f.intercept - intercept) < 1e-10);
    CHECK(f.sse == doctest::Approx(oracle::line_sse(x, y)).epsilon(1e-10));
}

TEST_CASE("zero activation variance gives a degenerate fit")
{
    const std::vector<double> x{1, 2, 3}, y{4, 4, 4};
    const auto f = fit_line(x, y);
    CHECK(f.degenerate);
    CHECK(f.r_squared == 0.0);
}

TEST_CASE("overlay of a set with itself gives identical curves")
{
    CurveSamples s;
    Rng rng(2);
    s.coords = Matrix(12, 3);
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 3; ++j)
            s.coords(i, j) = rng.normal();
        s.activations.push_back(rng.uniform());
        s.image_types.push_back(ImageType::Clear);
        s.sample_ids.push_back(i);
    }
    const Vector center = Vector::Zero(3);
    const Overlay o = overlay_curve(0, center, s, s, Metric::Euclidean);
    REQUIRE(o.clear.points.size() == o.camo.points.size());
    for (std::size_t i = 0; i < o.clear.points.size(); ++i) {
        CHECK(o.clear.points[i].distance == o.camo.points[i].distance);
        CHECK(std::isfinite(o.camo.points[i].distance));
    }
    CHECK(o.clear.fit.slope == o.camo.fit.slope);
    CHECK(o.clear_median_activation == o.camo_median_activation);
}

TEST_CASE("curves measure distance with the requested metric")
{
    CurveSamples s;
    s.coords = Matrix(2, 2);
    s.coords << 1, 1, -2, 0;
    s.activations = {1.0, 0.0};
    s.image_types = {ImageType::Clear, ImageType::Camo};
    s.sample_ids = {5, 6};
    const auto e = curve_from_samples(1, CenterKind::Centroid, Vector::Zero(2), s, Metric::Euclidean);
    const auto m = curve_from_samples(1, CenterKind::Centroid, Vector::Zero(2), s, Metric::Manhattan);
    CHECK(e.points[0].distance == doctest::Approx(std::sqrt(2.0)));
    CHECK(m.points[0].distance == 2.0);
    CHECK(m.points[1].sample_id == 6);
}

TEST_CASE("points on one line do not bifurcate")
{
    std::vector<double> d, a;
    for (int i = 0; i < 20; ++i) {
        d.push_back(0.2 * i);
        a.push_back(3.0 - 0.5 * d.back());
    }
    const auto r = detect_bifurcation(curve_of(d, a));
    CHECK_FALSE(r.bifurcated);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("a rising and a falling branch bifurcate; alternating fit reaches the best partition")
{
    Rng rng(31);
    std::vector<double> d, a;
    for (int i = 0; i < 20; ++i) {
        const double x = 4.0 * (i / 2) / 9.0;
        d.push_back(x);
        a.push_back((i % 2 ? 1.0 + x : 9.0 - x) + 0.05 * rng.normal());
    }
    const auto r = detect_bifurcation(curve_of(d, a));
    CHECK(r.bifurcated);
    CHECK(r.branches[0].slope * r.branches[1].slope < 0.0);
    CHECK(r.delta_bic > kBifurcationDeltaBic);
    const double best = oracle::best_two_line_sse(d, a, kMinBranchPoints);
    CHECK(r.two_line_sse == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("small curves are never bifurcated")
{
    const auto r = detect_bifurcation(curve_of({0, 1, 2, 3, 0, 1, 2}, {0, 1, 2, 3, 3, 2, 1}));
    CHECK_FALSE(r.bifurcated);
}

TEST_CASE("perfect classifier with no smoothing gives identity g")
{
    Counts c = Counts::Zero(3, 3);
    c.diagonal().setConstant(10);
    const auto g = shepard_g(ConfusionMatrix::from_counts(c), 0.0);
    CHECK(g.g.isApprox(Matrix::Identity(3, 3)));
}

TEST_CASE("g from hand-computed response probabilities")
{
    // Rows are presented classes: p_01 = 2/10, p_10 = 1/10, p_00 = 8/10, p_11 = 5/10.
    Counts c(3, 3);
    c << 8, 1, 1, 2, 5, 3, 0, 0, 10;
    const auto g = shepard_g(ConfusionMatrix::from_counts(c), 0.0);
    CHECK(g.p(0, 1) == doctest::Approx(0.2));
    CHECK(g.p(1, 0) == doctest::Approx(0.1));
    CHECK(std::abs(g.g(0, 1) - std::sqrt(0.05)) < 1e-9);
    CHECK(g.g(0, 1) == g.g(1, 0));
}

TEST_CASE("g is symmetric with a unit diagonal under smoothing")
{
    Rng rng(6);
    Counts c(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            c(i, j) = static_cast<std::int64_t>(rng.below(20)) + (i == j ? 30 : 0);
    const auto g = shepard_g(ConfusionMatrix::from_counts(c), 0.5);
    for (int i = 0; i < 5; ++i) {
        CHECK(g.g(i, i) == doctest::Approx(1.0).epsilon(1e-15));
        for (int j = 0; j < 5; ++j)
            CHECK(g.g(i, j) == g.g(j, i));
    }
}

TEST_CASE("equal response probabilities give g = 1")
{
    Counts c(2, 2);
    c << 5, 5, 5, 5;
    CHECK(shepard_g(ConfusionMatrix::from_counts(c), 0.0).g(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("unsmoothed empty rows are an error")
{
    Counts c(2, 2);
    c << 3, 1, 0, 0;
    CHECK_THROWS_AS(shepard_g(ConfusionMatrix::from_counts(c), 0.0), Error);
}

TEST_CASE("gradient pairs")
{
    Counts c(2, 2);
    c << 9, 1, 2, 8;
    const auto g = shepard_g(ConfusionMatrix::from_counts(c), 0.5);
    Matrix d(2, 2);
    d << 0, 1.5, 1.5, 0;
    const auto t = plot_gradient(g, d);
    REQUIRE(t.pairs.size() == 1);
    CHECK(t.pairs[0].distance == 1.5);
    CHECK_FALSE(t.spearman_rho.has_value());

    Counts id = Counts::Zero(4, 4);
    id.diagonal().setConstant(5);
    Matrix d4 = Matrix::Random(4, 4).cwiseAbs();
    d4 = (d4 + d4.transpose()).eval();
    d4.diagonal().setZero();
    const auto t4 = plot_gradient(shepard_g(ConfusionMatrix::from_counts(id), 0.0), d4);
    CHECK(t4.pairs.size() == 6);
    for (const auto& p : t4.pairs)
        CHECK(p.g == 0.0);
    CHECK_FALSE(t4.spearman_rho.has_value());
    CHECK_THROWS_AS(plot_gradient(g, d4), Error);
}
