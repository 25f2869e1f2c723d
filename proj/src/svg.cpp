#include "secrate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace secrate {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 800.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 50.0;
constexpr double kMarginBottom = 70.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// A visually pleasant tick spacing of the form {1,2,5} * 10^k covering the
// range with roughly the requested number of intervals.
double nice_tick_step(double range, int target_intervals) {
    if (range <= 0) return 1.0;
    double raw = range / target_intervals;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step;
    if (norm <= 1.0) step = 1.0;
    else if (norm <= 2.0) step = 2.0;
    else if (norm <= 5.0) step = 5.0;
    else step = 10.0;
    return step * mag;
}

}  // namespace

std::string render_regions_svg(const std::vector<RegionSeries>& series,
                               const std::string& title) {
    // Axis range: pad the largest vertex coordinate slightly so boundary
    // polygons do not touch the frame.
    double max_coord = 0.0;
    for (const auto& s : series)
        for (const auto& v : s.region.vertices)
            max_coord = std::max({max_coord, v[0], v[1]});
    double axis_max = std::max(max_coord * 1.08, 0.1);

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + x / axis_max * plot_w; };
    auto py = [&](double y) { return kHeight - kMarginBottom - y / axis_max * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    if (!title.empty())
        out << "<text x=\"" << kWidth / 2
            << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"18\">"
            << escape_xml(title) << "</text>\n";

    // Gridlines and ticks.
    double step = nice_tick_step(axis_max, 6);
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333\">\n";
    for (double t = 0.0; t <= axis_max + step * 1e-9; t += step) {
        double gx = px(t), gy = py(t);
        out << "<line x1=\"" << fmt("%.6f", gx) << "\" y1=\"" << fmt("%.6f", py(0))
            << "\" x2=\"" << fmt("%.6f", gx) << "\" y2=\"" << fmt("%.6f", py(axis_max))
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << fmt("%.6f", px(0)) << "\" y1=\"" << fmt("%.6f", gy)
            << "\" x2=\"" << fmt("%.6f", px(axis_max)) << "\" y2=\"" << fmt("%.6f", gy)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt("%.6f", gx) << "\" y=\""
            << fmt("%.6f", py(0) + 18) << "\" text-anchor=\"middle\">"
            << fmt("%g", t) << "</text>\n";
        out << "<text x=\"" << fmt("%.6f", px(0) - 8) << "\" y=\""
            << fmt("%.6f", gy + 4) << "\" text-anchor=\"end\">" << fmt("%g", t)
            << "</text>\n";
    }
    out << "</g>\n";

    // Axes.
    out << "<line x1=\"" << fmt("%.6f", px(0)) << "\" y1=\"" << fmt("%.6f", py(0))
        << "\" x2=\"" << fmt("%.6f", px(axis_max)) << "\" y2=\"" << fmt("%.6f", py(0))
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << fmt("%.6f", px(0)) << "\" y1=\"" << fmt("%.6f", py(0))
        << "\" x2=\"" << fmt("%.6f", px(0)) << "\" y2=\"" << fmt("%.6f", py(axis_max))
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << fmt("%.6f", kMarginLeft + plot_w / 2) << "\" y=\""
        << fmt("%.6f", kHeight - 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">R1 (bits/use)</text>\n";
    out << "<text x=\"22\" y=\"" << fmt("%.6f", kMarginTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 22 "
        << fmt("%.6f", kMarginTop + plot_h / 2) << ")\">R2 (bits/use)</text>\n";

    // Region polygons.
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& region = series[i].region;
        const char* color = kPalette[i % kPaletteSize];
        if (region.empty()) continue;
        if (region.vertices.size() == 1) {
            const auto& v = region.vertices[0];
            out << "<circle cx=\"" << fmt("%.6f", px(v[0])) << "\" cy=\""
                << fmt("%.6f", py(v[1])) << "\" r=\"5\" fill=\"" << color
                << "\"/>\n";
            continue;
        }
        if (region.vertices.size() == 2) {
            const auto& a = region.vertices[0];
            const auto& b = region.vertices[1];
            out << "<line x1=\"" << fmt("%.6f", px(a[0])) << "\" y1=\""
                << fmt("%.6f", py(a[1])) << "\" x2=\"" << fmt("%.6f", px(b[0]))
                << "\" y2=\"" << fmt("%.6f", py(b[1])) << "\" stroke=\"" << color
                << "\" stroke-width=\"2\"/>\n";
            continue;
        }
        out << "<polygon points=\"";
        for (std::size_t k = 0; k < region.vertices.size(); ++k) {
            if (k) out << " ";
            out << fmt("%.6f", px(region.vertices[k][0])) << ","
                << fmt("%.6f", py(region.vertices[k][1]));
        }
        out << "\" fill=\"" << color << "\" fill-opacity=\"0.18\" stroke=\""
            << color << "\" stroke-width=\"2\"/>\n";
    }

    // Legend (top right of the plot area).
    double lx = kWidth - kMarginRight - 210;
    double ly = kMarginTop + 14;
    out << "<g font-family=\"sans-serif\" font-size=\"13\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % kPaletteSize];
        double y = ly + 20.0 * static_cast<double>(i);
        out << "<rect x=\"" << fmt("%.6f", lx) << "\" y=\"" << fmt("%.6f", y - 11)
            << "\" width=\"14\" height=\"14\" fill=\"" << color
            << "\" fill-opacity=\"0.5\" stroke=\"" << color << "\"/>\n";
        std::string label = escape_xml(series[i].label);
        if (series[i].region.empty()) label += " (empty)";
        out << "<text x=\"" << fmt("%.6f", lx + 20) << "\" y=\"" << fmt("%.6f", y)
            << "\">" << label << "</text>\n";
    }
    out << "</g>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace secrate
