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
#include "genlaw/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace genlaw {

std::string_view to_string(ReductionMethod m)
{
    switch (m) {
    case ReductionMethod::PCA:
        return "pca";
    case ReductionMethod::ClassicalMDS:
        return "classical_mds";
    case ReductionMethod::Smacof:
        return "smacof";
    }
    return "";
}

DistanceMatrix pairwise_distances(const Matrix& rows, Metric metric, int threads)
{
    const Eigen::Index n = rows.rows();
    if (n < 2)
        data_error("pairwise distances need at least 2 rows");
    if (!rows.allFinite())
        data_error("pairwise distances: non-finite activation values");

    DistanceMatrix d;
    d.metric = metric;
    d.values = Matrix::Zero(n, n);
    const Matrix rt = rows.transpose();  // column access is contiguous

    auto fill = [&](Eigen::Index first, Eigen::Index stride) {
        for (Eigen::Index i = first; i < n; i += stride)
            for (Eigen::Index j = i + 1; j < n; ++j)
                d.values(i, j) = distance(rt.col(i), rt.col(j), metric);
    };
    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = static_cast<int>(std::min<Eigen::Index>(threads, n));
    if (threads == 1) {
        fill(0, 1);
    } else {
        // Interleaved rows balance the triangular workload.
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(fill, t, threads);
        for (auto& th : pool)
            th.join();
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            d.values(j, i) = d.values(i, j);
    return d;
}

void validate_distance_matrix(const DistanceMatrix& d)
{
    const Matrix& v = d.values;
    if (v.rows() != v.cols())
        data_error("distance matrix is not square");
    if (!v.allFinite())
        data_error("distance matrix has non-finite entries");
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
        if (v(i, i) != 0.0)
            data_error("distance matrix diagonal is not zero at " + std::to_string(i));
        for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
            if (v(i, j) < 0.0)
                data_error("distance matrix has negative entries");
            if (std::abs(v(i, j) - v(j, i)) > 1e-12)
                data_error("distance matrix is not symmetric");
        }
    }
}

SymmetricEigen symmetric_eigen(const Matrix& m)
{
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        numerical_error("symmetric eigendecomposition failed");
    const Eigen::Index n = m.rows();
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen returns ascending order.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = solver.eigenvalues()[n - 1 - i];
        out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

namespace {

/// Flips each column so that its largest-magnitude entry is positive
/// (first such entry on exact ties). Applies the same flips to `coords`.
void fix_signs(Matrix& basis, Matrix* coords)
{
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::Index best = 0;
        for (Eigen::Index r = 1; r < basis.rows(); ++r)
            if (std::abs(basis(r, c)) > std::abs(basis(best, c)))
                best = r;
        if (basis(best, c) < 0.0) {
            basis.col(c) *= -1.0;
            if (coords)
                coords->col(c) *= -1.0;
        }
    }
}

}  // namespace

Embedding pca(const Matrix& data, int out_dims)
{
    const Eigen::Index n = data.rows();
    const Eigen::Index k = data.cols();
    if (out_dims < 1 || out_dims > k)
        config_error("pca: out_dims must lie in [1, " + std::to_string(k) + "]");
    if (n <= out_dims)
        data_error("pca: need more rows than out_dims");
    if (!data.allFinite())
        data_error("pca: non-finite input values");

    Embedding e;
    e.method = ReductionMethod::PCA;
    e.mean = data.colwise().mean().transpose();
    const Matrix centered = data.rowwise() - e.mean.transpose();
    const Matrix cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    SymmetricEigen eig = symmetric_eigen(cov);

    const Vector lambda = eig.values.cwiseMax(0.0);
    const double total = lambda.sum();
    const double tol = std::max(lambda.size() > 0 ? lambda[0] : 0.0, 0.0) * static_cast<double>(k) *
                       std::numeric_limits<double>::epsilon();
    int rank = 0;
    for (Eigen::Index i = 0; i < k; ++i)
        if (lambda[i] > tol && lambda[i] > 0.0)
            ++rank;

    for (Eigen::Index i = 0; i < k; ++i)
        e.spectrum.push_back(total > 0.0 ? lambda[i] / total : 0.0);
    for (std::size_t i = 1; i < e.spectrum.size(); ++i)
        e.variance_differences.push_back(100.0 * (e.spectrum[i] - e.spectrum[i - 1]));
    e.variance_explained.assign(e.spectrum.begin(), e.spectrum.begin() + out_dims);

    e.components = eig.vectors.leftCols(out_dims);
    fix_signs(e.components, nullptr);
    e.coords = centered * e.components;

    if (rank < out_dims) {
        e.warnings.push_back("pca: covariance rank " + std::to_string(rank) + " is below out_dims " +
                             std::to_string(out_dims) + "; trailing components have zero variance");
        for (int c = rank; c < out_dims; ++c) {
            e.coords.col(c).setZero();
            e.variance_explained[static_cast<std::size_t>(c)] = 0.0;
        }
    }
    return e;
}

namespace {

Embedding torgerson(const DistanceMatrix& d, int out_dims)
{
    const Eigen::Index n = d.size();
    const Matrix sq = d.values.cwiseProduct(d.values);
    // -1/2 J D^2 J by row/column mean removal.
    const Vector row_mean = sq.rowwise().mean();
    const Vector col_mean = sq.colwise().mean().transpose();
    const double grand = sq.mean();
    Matrix b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = -0.5 * (sq(i, j) - row_mean[i] - col_mean[j] + grand);
    b = 0.5 * (b + b.transpose());

    SymmetricEigen eig = symmetric_eigen(b);
    Embedding e;
    e.method = ReductionMethod::ClassicalMDS;
    e.metric = d.metric;
    e.eigenvalues = eig.values;

    const double scale = std::max(std::abs(eig.values[0]), std::abs(eig.values[n - 1]));
    const double tol = scale * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    if (eig.values[n - 1] < -tol)
        e.warnings.push_back("classical_mds: negative eigenvalues truncated to zero (smallest " +
                             format_double(eig.values[n - 1]) + "); dissimilarities are not Euclidean");

    int positive = 0;
    Matrix basis = eig.vectors.leftCols(out_dims);
    e.coords = Matrix::Zero(n, out_dims);
    for (int c = 0; c < out_dims; ++c) {
        if (eig.values[c] > tol) {
            ++positive;
            e.coords.col(c) = basis.col(c) * std::sqrt(eig.values[c]);
        } else {
            basis.col(c).setZero();
        }
    }
    fix_signs(e.coords, nullptr);
    if (positive < out_dims)
        e.warnings.push_back("classical_mds: only " + std::to_string(positive) +
                             " positive eigenvalues; padded with zero columns");
    e.stress = normalized_stress(e.coords, d);
    e.initial_stress = e.stress;
    return e;
}

}  // namespace

Embedding classical_mds(const DistanceMatrix& d, int out_dims)
{
    validate_distance_matrix(d);
    if (d.size() < 2)
        data_error("classical_mds: need at least 2 points");
    if (out_dims < 1 || out_dims > d.size() - 1)
        config_error("classical_mds: out_dims must lie in [1, n-1]");
    return torgerson(d, out_dims);
}

double normalized_stress(const Matrix& coords, const DistanceMatrix& d)
{
    const Eigen::Index n = d.size();
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dist = (coords.row(i) - coords.row(j)).norm();
            const double delta = d.values(i, j);
            num += (dist - delta) * (dist - delta);
            den += delta * delta;
        }
    return den > 0.0 ? num / den : 0.0;
}

Embedding smacof(const DistanceMatrix& d, int out_dims, int max_iter, double tol)
{
    if (max_iter < 1)
        config_error("smacof: max_iter must be >= 1");
    if (!(tol > 0.0))
        config_error("smacof: tol must be positive");
    Embedding e = classical_mds(d, out_dims);
    e.method = ReductionMethod::Smacof;
    e.stress_history = {e.stress};
    e.initial_stress = e.stress;
    e.converged = false;

    const Eigen::Index n = d.size();
    Matrix x = e.coords;
    Matrix b(n, n);
    double current = e.stress;
    for (int it = 1; it <= max_iter; ++it) {
        // Guttman transform: X <- B(X) X / n.
        for (Eigen::Index i = 0; i < n; ++i) {
            double diag = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j)
                    continue;
                const double dist = (x.row(i) - x.row(j)).norm();
                const double v = dist > 0.0 ? -d.values(i, j) / dist : 0.0;
                b(i, j) = v;
                diag -= v;
            }
            b(i, i) = diag;
        }
        x = (b * x) / static_cast<double>(n);
        const double next = normalized_stress(x, d);
        e.stress_history.push_back(next);
        e.iterations = it;
        const double decrease = current - next;
        current = next;
        if (decrease < tol) {
            e.converged = true;
            break;
        }
    }
    e.coords = x;
    e.stress = current;
    if (!e.converged)
        e.warnings.push_back("smacof: no convergence within " + std::to_string(max_iter) + " iterations");
    return e;
}

}  // namespace genlaw
