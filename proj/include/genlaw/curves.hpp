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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genlaw/common.hpp"
#include "genlaw/geometry.hpp"
#include "genlaw/stats.hpp"
#include "genlaw/trainer.hpp"

namespace genlaw {

enum class CenterKind { Centroid, TrueCenter };
std::string_view to_string(CenterKind k);

struct CurvePoint {
    double distance = 0.0;
    double activation = 0.0;
    ImageType image_type = ImageType::Clear;
    std::int64_t sample_id = 0;
};

/// True-class activation as a function of distance to a class center.
struct GeneralizationCurve {
    int class_id = 0;
    CenterKind center_kind = CenterKind::Centroid;
    Vector center;
    std::vector<CurvePoint> points;
    LinearFit fit;
    std::optional<double> spearman_rho;
    /// Zero activation variance (or fewer than 2 points): R^2 is undefined.
    bool degenerate = false;

    std::vector<double> distances() const;
    std::vector<double> activations() const;
};

/// Samples of one class: coordinates with aligned activations and tags.
struct CurveSamples {
    Matrix coords;
    std::vector<double> activations;
    std::vector<ImageType> image_types;
    std::vector<std::int64_t> sample_ids;

    std::size_t size() const { return activations.size(); }
};

/// The region's search-space points and activations.
CurveSamples samples_of(const ClassRegion& region);

/// Curve of a region's points around its centroid or true center, in the
/// region's search space.
GeneralizationCurve build_curve(const ClassRegion& region, CenterKind kind, Metric metric);

/// Same, for explicit samples around an explicit center.
GeneralizationCurve curve_from_samples(int class_id, CenterKind kind, const Vector& center,
                                       const CurveSamples& samples, Metric metric);

/// Clear and camouflaged samples of one class measured against one center
/// found from the clear samples alone.
struct Overlay {
    GeneralizationCurve clear;
    GeneralizationCurve camo;
    double clear_median_distance = 0.0;
    double camo_median_distance = 0.0;
    double clear_median_activation = 0.0;
    double camo_median_activation = 0.0;
};

Overlay overlay_curve(int class_id, const Vector& clear_center, const CurveSamples& clear, const CurveSamples& camo,
                      Metric metric);

struct LineBranch {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Single line versus two lines fitted by alternating assignment.
struct BifurcationReport {
    int class_id = 0;
    LineBranch single;
    double single_sse = 0.0;
    std::array<LineBranch, 2> branches{};
    /// 0 or 1 per curve point.
    std::vector<int> assignment;
    double two_line_sse = 0.0;
    int iterations = 0;
    /// BIC(single) - BIC(two lines); positive favours two lines.
    double delta_bic = 0.0;
    bool bifurcated = false;
    /// Why `bifurcated` is false, when it is.
    std::string note;
};

/// BIC threshold above which two lines are preferred.
inline constexpr double kBifurcationDeltaBic = 10.0;
inline constexpr int kMinBranchPoints = 4;

BifurcationReport detect_bifurcation(const GeneralizationCurve& curve, int max_iter = 100);

/// Shepard's generalization measure lifted to class level:
/// p_ij = (count[j][i] + alpha) / (rowtotal[j] + k alpha) and
/// g_ij = sqrt(p_ij p_ji / (p_ii p_jj)).
struct GeneralizationMatrix {
    Matrix g;
    Matrix p;
    ConfusionMatrix source_confusion;
    double smoothing = 0.0;
};

GeneralizationMatrix shepard_g(const ConfusionMatrix& confusion, double alpha = 0.5);

struct GradientPair {
    int i = 0;
    int j = 0;
    double distance = 0.0;
    double g = 0.0;
};

struct GradientTable {
    /// i < j, sorted by distance (then i, j).
    std::vector<GradientPair> pairs;
    std::optional<double> spearman_rho;
};

/// (d_ij, g_ij) for all class pairs; `class_distances` is k x k.
GradientTable plot_gradient(const GeneralizationMatrix& g, const Matrix& class_distances);

}  // namespace genlaw
