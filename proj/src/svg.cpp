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
#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "genlaw/common.hpp"

namespace genlaw::svg {

std::string num(double v)
{
    if (v == 0.0)
        v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string_view color(int i)
{
    static constexpr std::string_view palette[] = {
        "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
        "#bcbd22", "#17becf", "#393b79", "#ad494a", "#8ca252", "#e7ba52", "#7b4173", "#3182bd",
    };
    constexpr int n = static_cast<int>(std::size(palette));
    return palette[((i % n) + n) % n];
}

void padded_range(double& lo, double& hi, double pad)
{
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
        return;
    }
    const double w = hi - lo;
    lo -= pad * w;
    hi += pad * w;
}

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '&':
            out += "&amp;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke)
{
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
          << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

void Document::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width)
{
    body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
}

void Document::circle(double cx, double cy, double r, std::string_view fill, std::string_view attrs)
{
    body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\"" << fill
          << "\"";
    if (!attrs.empty())
        body_ << ' ' << attrs;
    body_ << "/>\n";
}

void Document::polygon(const std::vector<std::pair<double, double>>& pts, std::string_view stroke,
                       std::string_view attrs)
{
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        body_ << (i ? " " : "") << num(pts[i].first) << ',' << num(pts[i].second);
    body_ << "\" fill=\"none\" stroke=\"" << stroke << "\"";
    if (!attrs.empty())
        body_ << ' ' << attrs;
    body_ << "/>\n";
}

void Document::text(double x, double y, std::string_view content, double size, std::string_view anchor)
{
    body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
          << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(content) << "</text>\n";
}

void Document::raw(std::string_view s) { body_ << s; }

std::string Document::str() const
{
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
        << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
        << "\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

void Document::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        data_error("cannot write " + path.string());
    out << str();
}

Panel make_panel(double x, double y, double w, double h, double xlo, double xhi, double ylo, double yhi)
{
    padded_range(xlo, xhi);
    padded_range(ylo, yhi);
    Panel p;
    p.x = x;
    p.y = y;
    p.w = w;
    p.h = h;
    p.sx = {xlo, xhi, x, x + w};
    p.sy = {ylo, yhi, y + h, y};
    return p;
}

void Panel::frame(Document& doc, std::string_view title, std::string_view xlabel, std::string_view ylabel) const
{
    doc.rect(x, y, w, h, "none", "#333333");
    for (int i = 0; i <= 4; ++i) {
        const double t = i / 4.0;
        const double xv = sx.d0 + t * (sx.d1 - sx.d0);
        const double yv = sy.d0 + t * (sy.d1 - sy.d0);
        const double px = sx(xv);
        const double py = sy(yv);
        doc.line(px, y + h, px, y + h + 4, "#333333");
        doc.text(px, y + h + 16, num(xv), 9, "middle");
        doc.line(x - 4, py, x, py, "#333333");
        doc.text(x - 6, py + 3, num(yv), 9, "end");
    }
    doc.text(x + w / 2, y - 8, title, 12, "middle");
    doc.text(x + w / 2, y + h + 32, xlabel, 10, "middle");
    doc.text(x - 40, y + h / 2, ylabel, 10, "middle");
}

}  // namespace genlaw::svg
