#include "importcast/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "importcast/error.hpp"

namespace importcast {
namespace {

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::vector<ChartSeries>& series,
                              int width, int height) {
    if (series.empty()) throw UsageError("chart needs at least one series");

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw UsageError("chart series '" + s.label + "' must have matching non-empty x and y");
        for (double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;

    const double margin = 48.0;
    const double plot_w = width - 2.0 * margin;
    const double plot_h = height - 2.0 * margin;
    auto px = [&](double x) { return margin + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return height - margin - (y - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << ' ' << height
        << "\">\n";
    svg << "  <rect x=\"" << coord(margin) << "\" y=\"" << coord(margin) << "\" width=\""
        << coord(plot_w) << "\" height=\"" << coord(plot_h)
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    svg << "  <text x=\"" << coord(width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape_xml(title) << "</text>\n";
    svg << "  <text x=\"" << coord(margin - 6) << "\" y=\"" << coord(py(y_max) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << coord(y_max) << "</text>\n";
    svg << "  <text x=\"" << coord(margin - 6) << "\" y=\"" << coord(py(y_min) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << coord(y_min) << "</text>\n";

    double legend_y = margin + 14.0;
    for (const auto& s : series) {
        svg << "  <polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << ' ';
            svg << coord(px(s.x[i])) << ',' << coord(py(s.y[i]));
        }
        svg << "\"/>\n";
        svg << "  <text x=\"" << coord(margin + 8) << "\" y=\"" << coord(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.color << "\">"
            << escape_xml(s.label) << (s.dashed ? " (forecast)" : "") << "</text>\n";
        legend_y += 14.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace importcast
