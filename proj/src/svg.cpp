#include "kinex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinex/io_util.hpp"

namespace kinex {
namespace {

// Plot frame inside the 800x600 canvas.
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 550.0;

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Pixel coordinates rounded to 1/100: plenty for display, and it keeps the
// emitted text short and platform-stable.
std::string px(double v) { return format_double(std::round(v * 100.0) / 100.0); }

// Tick label cleaned of floating noise: rounded to the step's precision.
std::string tick_label(double v, double step) {
  const int decimals =
      std::clamp(static_cast<int>(1 - std::floor(std::log10(step))), 0, 15);
  const double scale = std::pow(10.0, decimals);
  double snapped = std::round(v * scale) / scale;
  if (snapped == 0.0) {
    snapped = 0.0;  // normalize -0
  }
  return format_double(snapped);
}

// 1-2-5 step covering the span with about eight intervals.
double nice_step(double span) {
  const double raw = span / 8.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double base = raw / mag;
  if (base <= 1.0) return mag;
  if (base <= 2.0) return 2.0 * mag;
  if (base <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

struct Tick {
  double at = 0.0;     // transformed coordinate
  std::string label;
};

std::vector<Tick> linear_ticks(double lo, double hi) {
  const double step = nice_step(hi - lo);
  std::vector<Tick> out;
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (double v = first; v <= hi + step * 1e-9; v += step) {
    out.push_back({v, tick_label(v, step)});
  }
  return out;
}

// Decade ticks for a log axis (coordinates are log10); falls back to the
// range endpoints when no decade falls inside.
std::vector<Tick> log_ticks(double lo, double hi) {
  std::vector<Tick> out;
  for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) {
    out.push_back({e, format_double(std::pow(10.0, e))});
  }
  if (out.size() < 2) {
    out = {{lo, format_double(std::pow(10.0, lo))},
           {hi, format_double(std::pow(10.0, hi))}};
  }
  return out;
}

struct Axis {
  std::vector<double> coords;  // transformed values, one per row
  double lo = 0.0;
  double hi = 0.0;
  std::vector<Tick> ticks;
};

Axis build_axis(const CsvTable& table, const std::string& column,
                Scale scale) {
  const std::vector<double> raw = table.numeric_column(column);
  Axis axis;
  axis.coords.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    if (!std::isfinite(v)) {
      throw std::invalid_argument("plot: column '" + column + "' row " +
                                  std::to_string(i + 1) +
                                  " is not a finite number");
    }
    if (scale == Scale::Log && v <= 0.0) {
      throw std::invalid_argument("plot: column '" + column + "' row " +
                                  std::to_string(i + 1) + " is " +
                                  format_double(v) +
                                  ", not plottable on a log axis");
    }
    axis.coords.push_back(scale == Scale::Log ? std::log10(v) : v);
  }
  axis.lo = *std::min_element(axis.coords.begin(), axis.coords.end());
  axis.hi = *std::max_element(axis.coords.begin(), axis.coords.end());
  if (axis.lo == axis.hi) {  // flat data still needs a nonzero span
    axis.lo -= 0.5;
    axis.hi += 0.5;
  }
  axis.ticks = scale == Scale::Log ? log_ticks(axis.lo, axis.hi)
                                   : linear_ticks(axis.lo, axis.hi);
  return axis;
}

}  // namespace

std::string emit_plot_svg(const CsvTable& table, const PlotSpec& spec) {
  if (table.rows.empty()) {
    throw std::invalid_argument("plot: the table has no rows");
  }
  const Axis x = build_axis(table, spec.x_column, spec.x_scale);
  const Axis y = build_axis(table, spec.y_column, spec.y_scale);
  const auto map_x = [&x](double t) {
    return kLeft + (t - x.lo) / (x.hi - x.lo) * (kRight - kLeft);
  };
  const auto map_y = [&y](double t) {
    return kBottom - (t - y.lo) / (y.hi - y.lo) * (kBottom - kTop);
  };

  std::string svg;
  svg +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
      "font-family=\"sans-serif\" font-size=\"13\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    svg += "<text x=\"425\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           xml_escape(spec.title) + "</text>\n";
  }

  // Grid and ticks.
  for (const Tick& t : x.ticks) {
    const std::string gx = px(map_x(t.at));
    svg += "<line x1=\"" + gx + "\" y1=\"" + px(kTop) + "\" x2=\"" + gx +
           "\" y2=\"" + px(kBottom) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<line x1=\"" + gx + "\" y1=\"" + px(kBottom) + "\" x2=\"" + gx +
           "\" y2=\"" + px(kBottom + 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + gx + "\" y=\"" + px(kBottom + 22) +
           "\" text-anchor=\"middle\">" + xml_escape(t.label) + "</text>\n";
  }
  for (const Tick& t : y.ticks) {
    const std::string gy = px(map_y(t.at));
    svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + gy + "\" x2=\"" +
           px(kRight) + "\" y2=\"" + gy + "\" stroke=\"#dddddd\"/>\n";
    svg += "<line x1=\"" + px(kLeft - 6) + "\" y1=\"" + gy + "\" x2=\"" +
           px(kLeft) + "\" y2=\"" + gy + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(kLeft - 10) + "\" y=\"" + px(map_y(t.at) + 4) +
           "\" text-anchor=\"end\">" + xml_escape(t.label) + "</text>\n";
  }

  // Frame and axis titles.
  svg += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(kRight - kLeft) + "\" height=\"" + px(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"592\" "
         "text-anchor=\"middle\">" + xml_escape(spec.x_column) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + px((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         px((kTop + kBottom) / 2) + ")\">" + xml_escape(spec.y_column) +
         "</text>\n";

  // Data, in row order.
  if (spec.kind == PlotKind::Line) {
    svg += "<polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
      if (i != 0) {
        svg += ' ';
      }
      svg += px(map_x(x.coords[i])) + "," + px(map_y(y.coords[i]));
    }
    svg += "\"/>\n";
  } else {
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
      svg += "<circle cx=\"" + px(map_x(x.coords[i])) + "\" cy=\"" +
             px(map_y(y.coords[i])) + "\" r=\"3\" fill=\"#1f6fb4\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace kinex
