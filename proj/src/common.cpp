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
#include "genlaw/common.hpp"

#include <charconv>
#include <cmath>

namespace genlaw {

std::string_view to_string(ImageType t) { return t == ImageType::Clear ? "clear" : "camo"; }
std::string_view to_string(Split s) { return s == Split::Train ? "train" : "test"; }
std::string_view to_string(Metric m) { return m == Metric::Euclidean ? "euclidean" : "manhattan"; }

ImageType parse_image_type(std::string_view s)
{
    if (s == "clear")
        return ImageType::Clear;
    if (s == "camo")
        return ImageType::Camo;
    data_error("unknown image_type '" + std::string(s) + "'");
}

Split parse_split(std::string_view s)
{
    if (s == "train")
        return Split::Train;
    if (s == "test")
        return Split::Test;
    data_error("unknown split '" + std::string(s) + "'");
}

Metric parse_metric(std::string_view s)
{
    if (s == "euclidean")
        return Metric::Euclidean;
    if (s == "manhattan")
        return Metric::Manhattan;
    config_error("unknown metric '" + std::string(s) + "'");
}

double distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b, Metric m)
{
    double acc = 0.0;
    if (m == Metric::Manhattan) {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            acc += std::abs(a[i] - b[i]);
        return acc;
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    // from_chars rejects a leading '+', which is legal in the CSV formats.
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        data_error("not a number: '" + std::string(s) + "'");
    return v;
}

std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        data_error("not an integer: '" + std::string(s) + "'");
    return v;
}

Matrix select_rows(const Matrix& m, const std::vector<std::size_t>& rows)
{
    Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
    return out;
}

}  // namespace genlaw
