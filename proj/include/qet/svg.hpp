#pragma once

#include <string>
#include <vector>

#include "qet/analysis.hpp"

namespace qet {

struct Series {
  std::string label;
  std::vector<double> xs, ys;
};

// Self-contained SVG line plot (axes, ticks, legend, one polyline per
// series). Axis ranges come from the data. Throws IoError on write failure.
void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series);

// The standard set of sweep figures, fig1.svg ... fig8b.svg, rendered into
// `dir` from the given rows. Returns the written paths.
std::vector<std::string> write_sweep_figures(const std::string& dir,
                                             const std::vector<SweepRow>& rows);

}  // namespace qet
