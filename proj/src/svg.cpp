#include "irlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace irlab {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool plottable(double v, bool log_scale) {
  return std::isfinite(v) && (!log_scale || v > 0.0);
}

}  // namespace

std::string emit_svg_plot(const std::vector<PlotSeries>& series, const PlotStyle& style) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  std::size_t points = 0;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("emit_svg_plot: series x/y length mismatch");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!plottable(s.x[i], style.log_x) || !plottable(s.y[i], style.log_y)) continue;
      ++points;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (points < 2) {
    throw std::invalid_argument("emit_svg_plot: fewer than 2 plottable points");
  }

  const double ml = 64, mr = 16, mt = style.title.empty() ? 16 : 36, mb = 44;
  const double pw = style.width - ml - mr, ph = style.height - mt - mb;

  auto tx = [&](double v) {
    double lo = style.log_x ? std::log10(xmin) : xmin;
    double hi = style.log_x ? std::log10(xmax) : xmax;
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double t = ((style.log_x ? std::log10(v) : v) - lo) / (hi - lo);
    return ml + t * pw;
  };
  auto ty = [&](double v) {
    double lo = style.log_y ? std::log10(ymin) : ymin;
    double hi = style.log_y ? std::log10(ymax) : ymax;
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double t = ((style.log_y ? std::log10(v) : v) - lo) / (hi - lo);
    return mt + (1.0 - t) * ph;
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) +
         "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " +
         std::to_string(style.width) + " " + std::to_string(style.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\" "
           "font-family=\"sans-serif\">" + style.title + "</text>\n";
  }
  svg += "<g data-x-scale=\"" + std::string(style.log_x ? "log" : "linear") +
         "\" data-y-scale=\"" + std::string(style.log_y ? "log" : "linear") + "\">\n";

  // axes
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(ml + pw) +
         "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
         fmt(mt + ph) + "\" stroke=\"black\"/>\n";

  // ticks: decades on log axes, endpoints on linear ones
  auto emit_x_tick = [&](double v) {
    const double px = tx(v);
    svg += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(px) +
           "\" y2=\"" + fmt(mt + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(mt + ph + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" + fmt_tick(v) +
           "</text>\n";
  };
  auto emit_y_tick = [&](double v) {
    const double py = ty(v);
    svg += "<line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
           fmt(py) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(py + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + fmt_tick(v) +
           "</text>\n";
  };
  if (style.log_x) {
    for (int e = static_cast<int>(std::ceil(std::log10(xmin) - 1e-9));
         e <= static_cast<int>(std::floor(std::log10(xmax) + 1e-9)); ++e) {
      emit_x_tick(std::pow(10.0, e));
    }
  } else {
    emit_x_tick(xmin);
    emit_x_tick(xmax);
  }
  if (style.log_y) {
    for (int e = static_cast<int>(std::ceil(std::log10(ymin) - 1e-9));
         e <= static_cast<int>(std::floor(std::log10(ymax) + 1e-9)); ++e) {
      emit_y_tick(std::pow(10.0, e));
    }
  } else {
    emit_y_tick(ymin);
    emit_y_tick(ymax);
  }
  if (!style.x_label.empty()) {
    svg += "<text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt + ph + 36) +
           "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" +
           style.x_label + "</text>\n";
  }
  if (!style.y_label.empty()) {
    svg += "<text x=\"14\" y=\"" + fmt(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\" transform=\"rotate(-90 14 " +
           fmt(mt + ph / 2) + ")\">" + style.y_label + "</text>\n";
  }
  if (style.diagonal) {
    const double lo = std::max(xmin, ymin), hi = std::min(xmax, ymax);
    if (hi > lo) {
      svg += "<line x1=\"" + fmt(tx(lo)) + "\" y1=\"" + fmt(ty(lo)) + "\" x2=\"" + fmt(tx(hi)) +
             "\" y2=\"" + fmt(ty(hi)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!plottable(s.x[i], style.log_x) || !plottable(s.y[i], style.log_y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fmt(tx(s.x[i])) + "," + fmt(ty(s.y[i]));
    }
    if (pts.empty()) continue;
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double lx = ml + pw - 150, lyy = mt + 14 + 16 * static_cast<double>(si);
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(lyy - 4) + "\" x2=\"" + fmt(lx + 20) +
           "\" y2=\"" + fmt(lyy - 4) + "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt(lx + 26) + "\" y=\"" + fmt(lyy) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + s.name + "</text>\n";
  }
  if (style.skipped_rows > 0) {
    svg += "<text x=\"" + fmt(ml + pw - 150) + "\" y=\"" +
           fmt(mt + 14 + 16 * static_cast<double>(series.size())) +
           "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"gray\">(" +
           std::to_string(style.skipped_rows) + " rows without a match skipped)</text>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace irlab
