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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace genlaw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Point3 = Eigen::Vector3d;
using Point2 = Eigen::Vector2d;

enum class ImageType { Clear, Camo };
enum class Split { Train, Test };
enum class Metric { Euclidean, Manhattan };

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
    Config = 2,
    Data = 3,
    Numerical = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }
[[noreturn]] inline void data_error(const std::string& msg) { throw Error(ErrorKind::Data, msg); }
[[noreturn]] inline void numerical_error(const std::string& msg) { throw Error(ErrorKind::Numerical, msg); }

std::string_view to_string(ImageType t);
std::string_view to_string(Split s);
std::string_view to_string(Metric m);
ImageType parse_image_type(std::string_view s);
Split parse_split(std::string_view s);
Metric parse_metric(std::string_view s);

/// Distance between two equally sized vectors under the given metric.
double distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b, Metric m);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Strict decimal/scientific parse of the whole string; throws Error(Data) otherwise.
double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);

/// Rows of a matrix selected by index, in the given order.
Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& rows);

}  // namespace genlaw
