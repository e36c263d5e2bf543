#pragma once

#include <string>
#include <vector>

namespace typhoid {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal standalone SVG 1.1 line chart: axes, ticks, legend, one polyline
/// per series. Long series are decimated for file size; charts are for
/// inspection, the CSV carries the data.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<Series>& series);

} // namespace typhoid
