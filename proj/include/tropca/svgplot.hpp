#ifndef TROPCA_SVGPLOT_HPP
#define TROPCA_SVGPLOT_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tropca {

/// 2D scatter of torus points in the plane x_1 = 0: a point (x1,x2,x3)
/// plots at (x2 - x1, x3 - x1). color_group indexes the palette; -1 draws
/// the default color.
struct ScatterPoint {
  double x = 0.0, y = 0.0;
  int color_group = -1;
};

struct ScatterPlot {
  std::vector<ScatterPoint> points;
  std::vector<ScatterPoint> vertices;              // drawn as squares
  std::vector<std::pair<std::string, int>> legend;  // label, color group
  std::string annotation;                           // free-form footer text
};

void write_scatter_svg(std::ostream& os, const ScatterPlot& plot);

}  // namespace tropca

#endif  // TROPCA_SVGPLOT_HPP
