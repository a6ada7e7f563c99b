#include "tropca/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace tropca {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
};
constexpr int kPaletteSize = 12;
constexpr double kW = 640.0, kH = 480.0, kMargin = 48.0;

const char* color_of(int group) {
  if (group < 0) return "#404040";
  return kPalette[group % kPaletteSize];
}

}  // namespace

void write_scatter_svg(std::ostream& os, const ScatterPlot& plot) {
  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  bool first = true;
  auto fold = [&](const ScatterPoint& p) {
    if (first) {
      xlo = xhi = p.x;
      ylo = yhi = p.y;
      first = false;
    } else {
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      ylo = std::min(ylo, p.y);
      yhi = std::max(yhi, p.y);
    }
  };
  for (const ScatterPoint& p : plot.points) fold(p);
  for (const ScatterPoint& p : plot.vertices) fold(p);
  if (xhi - xlo < 1e-12) {
    xlo -= 1.0;
    xhi += 1.0;
  }
  if (yhi - ylo < 1e-12) {
    ylo -= 1.0;
    yhi += 1.0;
  }
  const double sx = (kW - 2 * kMargin) / (xhi - xlo);
  const double sy = (kH - 2 * kMargin) / (yhi - ylo);
  auto px = [&](double x) { return kMargin + (x - xlo) * sx; };
  auto py = [&](double y) { return kH - kMargin - (y - ylo) * sy; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
     << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
     << kW - 2 * kMargin << "\" height=\"" << kH - 2 * kMargin
     << "\" fill=\"none\" stroke=\"#c0c0c0\"/>\n";

  for (const ScatterPoint& v : plot.vertices) {
    os << "<rect class=\"vertex\" x=\"" << px(v.x) - 5 << "\" y=\""
       << py(v.y) - 5 << "\" width=\"10\" height=\"10\" fill=\"none\" "
       << "stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  }
  for (const ScatterPoint& p : plot.points) {
    os << "<circle class=\"pt\" cx=\"" << px(p.x) << "\" cy=\"" << py(p.y)
       << "\" r=\"3.5\" fill=\"" << color_of(p.color_group)
       << "\" fill-opacity=\"0.8\"/>\n";
  }

  double ly = kMargin + 4.0;
  for (const auto& [label, group] : plot.legend) {
    os << "<circle cx=\"" << kW - kMargin - 150 << "\" cy=\"" << ly + 5
       << "\" r=\"4\" fill=\"" << color_of(group) << "\"/>\n";
    os << "<text x=\"" << kW - kMargin - 140 << "\" y=\"" << ly + 9
       << "\" font-size=\"11\" font-family=\"sans-serif\">" << label
       << "</text>\n";
    ly += 16.0;
  }
  if (!plot.annotation.empty()) {
    os << "<text x=\"" << kMargin << "\" y=\"" << kH - 12
       << "\" font-size=\"12\" font-family=\"sans-serif\">" << plot.annotation
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace tropca
