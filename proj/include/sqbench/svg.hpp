#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sqbench {

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool zero_line = false;  // horizontal marker at y = 0
};

// Self-contained static SVG line chart; no external assets.
std::string render_line_chart(const std::vector<PlotSeries>& series,
                              const PlotOptions& options);

}  // namespace sqbench
