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

#include <filesystem>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace genlaw::svg {

/// Fixed 6-significant-digit formatting for every coordinate written.
std::string num(double v);

/// Categorical color for index i.
std::string_view color(int i);

/// Linear map from a data range onto a pixel interval.
struct Scale {
    double d0 = 0.0, d1 = 1.0;
    double p0 = 0.0, p1 = 1.0;

    double operator()(double v) const { return d1 == d0 ? 0.5 * (p0 + p1) : p0 + (v - d0) * (p1 - p0) / (d1 - d0); }
};

/// Expands [lo, hi] by `pad` of its width; a zero-width range becomes +-0.5.
void padded_range(double& lo, double& hi, double pad = 0.05);

class Document {
public:
    Document(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke);
    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0);
    void circle(double cx, double cy, double r, std::string_view fill, std::string_view attrs = {});
    void polygon(const std::vector<std::pair<double, double>>& pts, std::string_view stroke, std::string_view attrs = {});
    void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "start");
    void raw(std::string_view s);

    std::string str() const;
    void save(const std::filesystem::path& path) const;

private:
    double width_, height_;
    std::ostringstream body_;
};

/// A plotting area with axes, ticks and a title.
struct Panel {
    double x = 0.0, y = 0.0, w = 300.0, h = 300.0;
    Scale sx, sy;

    /// Draws the frame, 5 ticks per axis and labels.
    void frame(Document& doc, std::string_view title, std::string_view xlabel, std::string_view ylabel) const;
};

Panel make_panel(double x, double y, double w, double h, double xlo, double xhi, double ylo, double yhi);

std::string escape(std::string_view s);

}  // namespace genlaw::svg
