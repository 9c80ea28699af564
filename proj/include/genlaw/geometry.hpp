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
#include <span>
#include <string_view>
#include <vector>

#include "genlaw/common.hpp"

namespace genlaw {

// ---------------------------------------------------------------------------
// Convex hulls

/// Twice the signed area of triangle (o, a, b); positive for a left turn.
double cross(const Point2& o, const Point2& a, const Point2& b);

/// Monotone-chain hull. Returns indices into `points` in counter-clockwise
/// order starting from the lexicographically smallest point. Points on hull
/// edges are excluded (a zero cross product counts as collinear). Fewer than
/// three distinct non-collinear points give a segment (2 indices) or a point.
std::vector<std::size_t> convex_hull_indices(std::span<const Point2> points);
std::vector<Point2> convex_hull_2d(std::span<const Point2> points);

/// Inside-or-on test against a CCW hull, with absolute tolerance on the
/// edge orientation test. Handles point and segment hulls.
bool hull_contains(std::span<const Point2> hull, const Point2& p, double tol = 0.0);

enum class Plane { XY, XZ, YZ };
inline constexpr Plane kPlanes[] = {Plane::XY, Plane::XZ, Plane::YZ};
std::string_view to_string(Plane p);
std::array<int, 2> plane_axes(Plane p);

/// 2-D projection of the rows of an m x 3 matrix.
std::vector<Point2> project(const Matrix& points, Plane plane);

// ---------------------------------------------------------------------------
// Centers

/// Arithmetic mean of the rows.
Vector centroid(const Matrix& points);

enum class MonotonicityCriterion { SpearmanRho, NegativeSlopeR2 };
std::string_view to_string(MonotonicityCriterion c);
MonotonicityCriterion parse_criterion(std::string_view s);

struct CenterSearchConfig {
    /// Lattice points per axis; must be 2^j + 1 so that refinements nest.
    int grid_resolution = 33;
    /// Fraction of the bounding-box extent added on each side.
    double box_expansion = 0.10;
    MonotonicityCriterion monotonicity_criterion = MonotonicityCriterion::SpearmanRho;
    Metric distance_metric = Metric::Euclidean;
    /// Worker threads for grid scoring; 0 means hardware concurrency.
    int threads = 1;

    void validate() const;
};

/// Lower is more monotone-decreasing. Spearman: rho(distance, activation).
/// NegativeSlopeR2: -R^2 for a negative fitted slope, +R^2 otherwise.
/// Undefined correlations score 0.
double monotonicity_score(std::span<const double> distances, std::span<const double> activations,
                          MonotonicityCriterion criterion);

struct CenterSearchResult {
    Vector center;
    double score = 0.0;
    Vector centroid;
    double centroid_score = 0.0;
    /// True when the centroid candidate won.
    bool at_centroid = false;
    /// All activations equal: the search is skipped and the centroid returned with score 0.
    bool degenerate = false;
    Vector grid_lo;
    Vector grid_hi;
    int grid_resolution = 0;
    /// One score per lattice point, lexicographic order (first axis slowest).
    std::vector<double> score_surface;
};

/// Exhaustive lattice search for the point from which activation decreases
/// most monotonically with distance. The centroid is always a candidate.
/// Ties resolve to the lower score, then the candidate nearer the centroid,
/// then lexicographic lattice order. Output does not depend on the order of
/// the input rows.
CenterSearchResult find_true_center(const Matrix& points, std::span<const double> activations,
                                    const CenterSearchConfig& config);

/// Coordinates of lattice point `index` for the given bounds.
Vector lattice_point(const Vector& lo, const Vector& hi, int resolution, std::size_t index);

// ---------------------------------------------------------------------------
// Regions

/// One class's samples in a reduced feature space.
struct ClassRegion {
    int class_id = 0;
    /// m x 3 reduced coordinates (hulls, bounding box).
    Matrix points;
    /// m x D coordinates used for centers and distances; equals `points`
    /// unless the search runs in the full activation space.
    Matrix search_points;
    std::vector<std::int64_t> sample_ids;
    std::vector<ImageType> image_types;
    /// True-class node activation per point.
    std::vector<double> activations;
    /// Hull vertex indices into `points` for XY, XZ, YZ.
    std::array<std::vector<std::size_t>, 3> hulls;
    Vector bbox_min;
    Vector bbox_max;
    Vector centroid;
    CenterSearchResult true_center;
};

ClassRegion build_region(int class_id, const Matrix& points, const Matrix& search_points,
                         std::vector<double> activations, std::vector<std::int64_t> sample_ids,
                         std::vector<ImageType> image_types, const CenterSearchConfig& config);

}  // namespace genlaw
