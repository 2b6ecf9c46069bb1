#ifndef KINEX_SVG_HPP
#define KINEX_SVG_HPP

#include <string>

#include "kinex/csv.hpp"

namespace kinex {

enum class Scale { Linear, Log };
enum class PlotKind { Line, Scatter };

struct PlotSpec {
  std::string x_column;
  std::string y_column;
  Scale x_scale = Scale::Linear;
  Scale y_scale = Scale::Linear;
  PlotKind kind = PlotKind::Line;
  std::string title;
};

// Renders two columns of a table as a self-contained SVG document (800x600
// viewBox, axes, ticks, light grid). Line plots connect points in row
// order; scatter plots draw one circle per row. Log axes get decade ticks.
// The output depends only on the inputs. Throws std::invalid_argument for
// a missing column (by name), an empty table, a non-finite value, or a
// nonpositive value on a log axis (by column and 1-based data row).
std::string emit_plot_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace kinex

#endif  // KINEX_SVG_HPP
