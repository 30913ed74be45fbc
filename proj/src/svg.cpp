/*
* Copyright (C) 2026 episdyn contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "episdyn/svg.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace episdyn
{

namespace
{

constexpr double width = 640.0;
constexpr double height = 640.0;
constexpr double margin = 70.0;
constexpr double plot = width - 2.0 * margin;
// Polylines are thinned to at most this many vertices.
constexpr std::size_t max_vertices = 4000;

const std::array<const char*, 8> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};

double px(double s)
{
    return margin + s * plot;
}

double py(double i)
{
    return height - margin - i * plot;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& text)
{
    std::string out;
    for (char c : text) {
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
        default:
            out += c;
        }
    }
    return out;
}

} // namespace

std::string phase_portrait_svg(const std::vector<std::vector<PlanarState>>& trajectories,
                               const std::vector<PortraitMarker>& markers, const std::string& title)
{
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << escape(title) << "</text>\n";

    // axes and ticks
    os << "<g stroke=\"black\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(1)) << "\" y2=\""
       << num(py(0)) << "\"/>\n";
    os << "<line x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(0)) << "\" y2=\""
       << num(py(1)) << "\"/>\n";
    for (int k = 0; k <= 10; ++k) {
        const double v = k / 10.0;
        os << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(px(v)) << "\" y2=\""
           << num(py(0) + 5) << "\"/>\n";
        os << "<line x1=\"" << num(px(0) - 5) << "\" y1=\"" << num(py(v)) << "\" x2=\"" << num(px(0)) << "\" y2=\""
           << num(py(v)) << "\"/>\n";
    }
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int k = 0; k <= 10; k += 2) {
        const double v = k / 10.0;
        os << "<text x=\"" << num(px(v)) << "\" y=\"" << num(py(0) + 18) << "\" text-anchor=\"middle\">" << v
           << "</text>\n";
        os << "<text x=\"" << num(px(0) - 8) << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">" << v
           << "</text>\n";
    }
    os << "</g>\n";
    os << "<text x=\"" << num(px(0.5)) << "\" y=\"" << num(height - 25) << "\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"14\">S</text>\n";
    os << "<text x=\"25\" y=\"" << num(py(0.5)) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"14\">I</text>\n";

    // simplex boundary s + i = 1
    os << "<polygon points=\"" << num(px(0)) << ',' << num(py(0)) << ' ' << num(px(1)) << ',' << num(py(0)) << ' '
       << num(px(0)) << ',' << num(py(1)) << "\" fill=\"#f4f4f4\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t t = 0; t < trajectories.size(); ++t) {
        const auto& path = trajectories[t];
        if (path.empty()) {
            continue;
        }
        const std::size_t stride = path.size() / max_vertices + 1;
        os << "<polyline fill=\"none\" stroke=\"" << palette[t % palette.size()] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < path.size(); k += stride) {
            os << num(px(path[k].s)) << ',' << num(py(path[k].i)) << ' ';
        }
        os << num(px(path.back().s)) << ',' << num(py(path.back().i)) << "\"/>\n";
        os << "<circle cx=\"" << num(px(path.front().s)) << "\" cy=\"" << num(py(path.front().i))
           << "\" r=\"3\" fill=\"" << palette[t % palette.size()] << "\"/>\n";
    }

    for (const auto& m : markers) {
        os << "<circle cx=\"" << num(px(m.point.s)) << "\" cy=\"" << num(py(m.point.i)) << "\" r=\"6\" stroke=\"black\" "
           << "stroke-width=\"2\" fill=\"" << (m.stable ? "black" : "white") << "\"/>\n";
        os << "<text x=\"" << num(px(m.point.s) + 9) << "\" y=\"" << num(py(m.point.i) - 9)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(m.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace episdyn
