#pragma once

#include <string>
#include <vector>

namespace importcast {

struct ChartSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
    std::string color = "#1f6fb2";
};

// Self-contained SVG line chart: a frame, min/max tick labels, and one
// polyline per series. No plotting dependency.
std::string render_line_chart(const std::string& title, const std::vector<ChartSeries>& series,
                              int width = 860, int height = 420);

}  // namespace importcast
