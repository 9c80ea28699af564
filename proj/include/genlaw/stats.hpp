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
#include <span>
#include <vector>

namespace genlaw {

/// 1-based ranks; tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation; empty when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation with average-rank ties.
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y);

/// Ordinary least squares of y on x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// 1 - SSE/SST; 0 when `degenerate`.
    double r_squared = 0.0;
    double sse = 0.0;
    /// Zero variance in x or y: the slope or R^2 is undefined.
    bool degenerate = false;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

}  // namespace genlaw
