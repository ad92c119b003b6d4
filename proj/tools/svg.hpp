#pragma once

// Minimal SVG heatmap writer for the threshold-sweep ablation. No imaging
// dependency; output is diffable text.

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

inline void write_svg_heatmap(const std::string& path,
                              const std::vector<std::vector<double>>& grid,
                              const std::vector<double>& x_ticks,
                              const std::vector<double>& y_ticks, const std::string& x_label,
                              const std::string& y_label, const std::string& title) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");

  const int rows = static_cast<int>(grid.size());
  const int cols = rows ? static_cast<int>(grid[0].size()) : 0;
  const int cell = 44;
  const int margin = 70;
  const int width = margin + cols * cell + 30;
  const int height = margin + rows * cell + 60;

  double lo = 1e300, hi = -1e300;
  for (const auto& row : grid)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi <= lo) hi = lo + 1e-12;

  std::fprintf(f,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
               "font-family=\"monospace\" font-size=\"11\">\n",
               width, height);
  std::fprintf(f, "<text x=\"%d\" y=\"20\" font-size=\"14\">%s</text>\n", margin, title.c_str());

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double t = (grid[r][c] - lo) / (hi - lo);
      // Blue (low) to red (high) through white.
      const int red = static_cast<int>(255 * std::min(1.0, 2.0 * t));
      const int blue = static_cast<int>(255 * std::min(1.0, 2.0 * (1.0 - t)));
      const int green = static_cast<int>(255 * (1.0 - std::abs(2.0 * t - 1.0)));
      const int x = margin + c * cell;
      const int y = margin + (rows - 1 - r) * cell - 30;
      std::fprintf(f,
                   "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"rgb(%d,%d,%d)\" "
                   "stroke=\"#444\"/>\n",
                   x, y, cell, cell, red, green, blue);
      std::fprintf(f, "<text x=\"%d\" y=\"%d\" font-size=\"9\">%.3f</text>\n", x + 3,
                   y + cell / 2 + 3, grid[r][c]);
    }
  }
  for (int c = 0; c < cols && c < static_cast<int>(x_ticks.size()); ++c)
    std::fprintf(f, "<text x=\"%d\" y=\"%d\">%.1f</text>\n", margin + c * cell + cell / 2 - 10,
                 margin + rows * cell - 30 + 16, x_ticks[c]);
  for (int r = 0; r < rows && r < static_cast<int>(y_ticks.size()); ++r)
    std::fprintf(f, "<text x=\"%d\" y=\"%d\">%.1f</text>\n", margin - 36,
                 margin + (rows - 1 - r) * cell - 30 + cell / 2 + 4, y_ticks[r]);
  std::fprintf(f, "<text x=\"%d\" y=\"%d\">%s</text>\n", margin + cols * cell / 2 - 20,
               height - 18, x_label.c_str());
  std::fprintf(f, "<text x=\"14\" y=\"%d\" transform=\"rotate(-90 14 %d)\">%s</text>\n",
               margin + rows * cell / 2, margin + rows * cell / 2, y_label.c_str());
  std::fputs("</svg>\n", f);
  std::fclose(f);
}

}  // namespace cli
