#pragma once

#include <string>
#include <vector>

#include "kpo/observables.hpp"
#include "kpo/scenarios.hpp"

namespace kpo {

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool markers = false;  // draw points instead of connected lines
  int width = 640;
  int height = 420;
};

/// Line chart of `y_columns` against `x_column`. NaN entries break the line.
std::string svg_line_plot(const SeriesTable& table, const std::string& x_column,
                          const std::vector<std::string>& y_columns, const PlotOptions& options = {});

/// Heatmap with a diverging palette centred on W = 0.
std::string svg_heatmap(const WignerGrid& grid, const PlotOptions& options = {});

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace kpo
