#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace openrcd::cli {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool dashed = false;
};

/// Self-contained SVG line chart with linear axes, five ticks per axis and a
/// legend. Labels are XML-escaped.
std::string render_line_plot(const std::vector<PlotSeries>& series, std::string_view title,
                             std::string_view x_label, std::string_view y_label);

std::string xml_escape(std::string_view text);

}  // namespace openrcd::cli
