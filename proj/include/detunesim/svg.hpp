// svg.hpp — minimal SVG 1.1 line plots: axes, ticks, legend, one
// polyline per series. Deterministic byte output.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dsim::cli {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f4e79";
    std::string dash;  // e.g. "6,3"; empty = solid
};

void write_line_plot(const std::filesystem::path& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

} // namespace dsim::cli
