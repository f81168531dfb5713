#pragma once

#include <string>
#include <vector>

namespace splinewidth::cli {

/// One polyline of a plot, in data coordinates.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal standalone SVG line plot: axes, tick labels, one polyline per
/// series with a small legend. With log_y the y data is plotted on a log10
/// axis (non-positive values are dropped). Pure function of its inputs.
std::string render_line_plot(const std::vector<Series>& series, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             bool log_y);

}  // namespace splinewidth::cli
