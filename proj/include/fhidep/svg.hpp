#pragma once

#include <string>
#include <vector>

namespace fhidep {

/// One polyline series of a chart.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/**
 * Minimal self-contained SVG 1.1 line chart: linear axes with computed
 * ticks, one polyline per series, legend with the series labels.
 * Output is deterministic for identical inputs.
 */
std::string render_line_chart(const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<SvgSeries>& series);

}  // namespace fhidep
