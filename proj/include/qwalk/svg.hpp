#pragma once

#include <string>
#include <vector>

namespace qwalk {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained static SVG: axes with ticks, one polyline per series, and a
/// legend. Non-finite points are skipped. No external resources, so the file
/// renders anywhere the CSV travels.
std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace qwalk
