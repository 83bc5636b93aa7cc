// svg.hpp — minimal line-chart emission for diagnostic figures.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace linfdsp {

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Axes plus one polyline per series, deterministic output.  log_y plots
// log10 of the values (nonpositive values are clamped to the axis floor).
void svg_line_chart(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y = false);

}  // namespace linfdsp
