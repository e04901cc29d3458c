#pragma once

#include <string>
#include <vector>

namespace irlab {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotStyle {
  int width = 640;
  int height = 480;
  bool log_x = true;
  bool log_y = true;
  std::string title;
  std::string x_label;
  std::string y_label;
  bool diagonal = false;  // dashed y = x reference line
  int skipped_rows = 0;   // sentinel rows dropped upstream; noted in the legend
};

// Standalone SVG line chart, log-log by default, byte-deterministic for a
// fixed input. Points that are non-finite (or non-positive on a log axis)
// are skipped. Fewer than 2 plottable points in total is an error.
std::string emit_svg_plot(const std::vector<PlotSeries>& series, const PlotStyle& style);

}  // namespace irlab
