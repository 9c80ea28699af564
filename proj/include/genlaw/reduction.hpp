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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genlaw/common.hpp"

namespace genlaw {

/// Symmetric, nonnegative, zero diagonal.
struct DistanceMatrix {
    Matrix values;
    Metric metric = Metric::Euclidean;

    Eigen::Index size() const { return values.rows(); }
};

/// Distances between all row pairs of `rows`. Each of the n(n-1)/2 upper
/// entries is computed once and mirrored. `threads` > 1 splits rows across
/// workers; results do not depend on the thread count.
DistanceMatrix pairwise_distances(const Matrix& rows, Metric metric, int threads = 1);

/// Throws Error(Data) unless `d` is square, symmetric within 1e-12, has an
/// exactly zero diagonal and no negative or non-finite entries.
void validate_distance_matrix(const DistanceMatrix& d);

/// Eigen-pairs of a symmetric matrix, eigenvalues sorted descending.
struct SymmetricEigen {
    Vector values;
    Matrix vectors;  // columns
};
SymmetricEigen symmetric_eigen(const Matrix& m);

enum class ReductionMethod { PCA, ClassicalMDS, Smacof };
std::string_view to_string(ReductionMethod m);

struct Embedding {
    Matrix coords;  // n x out_dims
    ReductionMethod method = ReductionMethod::PCA;
    std::optional<Metric> metric;

    // PCA diagnostics.
    /// Fraction of total variance per retained component.
    std::vector<double> variance_explained;
    /// 100 * (ve[i] - ve[i-1]) for i >= 1, in percentage points; one shorter than spectrum.
    std::vector<double> variance_differences;
    /// Fractions for every component of the input, not only retained ones.
    std::vector<double> spectrum;
    Matrix components;  // k x out_dims loadings
    Vector mean;

    // MDS diagnostics.
    Vector eigenvalues;  // classical MDS, descending
    double stress = 0.0;
    double initial_stress = 0.0;
    std::vector<double> stress_history;  // SMACOF, index 0 is the initialization
    int iterations = 0;
    bool converged = true;

    std::vector<std::string> warnings;
};

/// Projection onto the top `out_dims` eigenvectors of the sample covariance
/// (divisor n-1) of mean-centered rows. Each component's largest-magnitude
/// loading is made positive. Rank deficiency is a warning, not an error.
Embedding pca(const Matrix& data, int out_dims);

/// Torgerson scaling: eigendecomposition of -1/2 J D^2 J. Negative
/// eigenvalues are truncated to zero with a warning.
Embedding classical_mds(const DistanceMatrix& d, int out_dims);

/// Stress majorization (Guttman transform) started from classical MDS.
/// Stops when the normalized-stress decrease falls below `tol`.
Embedding smacof(const DistanceMatrix& d, int out_dims, int max_iter = 300, double tol = 1e-9);

/// sum_{i<j} (||x_i - x_j|| - delta_ij)^2 / sum_{i<j} delta_ij^2
double normalized_stress(const Matrix& coords, const DistanceMatrix& d);

}  // namespace genlaw
