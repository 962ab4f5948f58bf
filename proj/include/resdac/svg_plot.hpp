#pragma once

// Minimal dependency-free line-plot writer (static SVG output).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace resdac {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#000000";
    std::string dash;        // stroke-dasharray, empty = solid
    double width = 1.3;
    bool in_legend = true;
};

namespace detail {

inline std::string plot_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace detail

inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::vector<PlotSeries>& series,
                           const std::string& x_label = "t",
                           const std::string& y_label = "value") {
    const double width = 960, height = 560;
    const double ml = 70, mr = 20, mt = 46, mb = 46;

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    if (!(x_lo < x_hi)) { x_lo -= 1; x_hi += 1; }
    if (!(y_lo < y_hi)) { y_lo -= 1; y_hi += 1; }
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_lo -= y_pad;
    y_hi += y_pad;

    const auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
    const auto py = [&](double y) {
        return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
    };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot file " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        << "font-family=\"sans-serif\">" << title << "</text>\n";

    // axes with min/mid/max ticks
    out << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\"/>\n";
    out << "</g>\n";
    out << "<g font-size=\"11\" font-family=\"sans-serif\" fill=\"#333\">\n";
    for (double f : {0.0, 0.5, 1.0}) {
        const double xv = x_lo + f * (x_hi - x_lo);
        const double yv = y_lo + f * (y_hi - y_lo);
        out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 16
            << "\" text-anchor=\"middle\">" << detail::plot_num(xv) << "</text>\n";
        out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\">" << detail::plot_num(yv) << "</text>\n";
    }
    out << "<text x=\"" << width - mr << "\" y=\"" << height - 10
        << "\" text-anchor=\"end\">" << x_label << "</text>\n";
    out << "<text x=\"14\" y=\"" << mt - 6 << "\">" << y_label << "</text>\n";
    out << "</g>\n";

    for (const auto& s : series) {
        if (s.points.empty()) continue;
        // keep files small on long runs
        const std::size_t stride = std::max<std::size_t>(1, s.points.size() / 2000);
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width
            << "\"";
        if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
        out << " points=\"";
        for (std::size_t k = 0; k < s.points.size(); k += stride)
            out << detail::plot_num(px(s.points[k].first)) << ","
                << detail::plot_num(py(s.points[k].second)) << " ";
        const auto& last = s.points.back();
        out << detail::plot_num(px(last.first)) << "," << detail::plot_num(py(last.second));
        out << "\"/>\n";
    }

    double ly = mt + 8;
    out << "<g font-size=\"11\" font-family=\"sans-serif\">\n";
    for (const auto& s : series) {
        if (!s.in_legend) continue;
        out << "<line x1=\"" << width - mr - 150 << "\" y1=\"" << ly << "\" x2=\""
            << width - mr - 122 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
            << "\" stroke-width=\"2\"";
        if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
        out << "/>\n";
        out << "<text x=\"" << width - mr - 116 << "\" y=\"" << ly + 4 << "\">" << s.label
            << "</text>\n";
        ly += 16;
    }
    out << "</g>\n</svg>\n";
}

} // namespace resdac
