#ifndef YM_SVG_HPP_
#define YM_SVG_HPP_

#include <string>
#include <vector>

#include "ym/runner.hpp"

namespace ym {

// Deterministic SVG renderers: fixed canvas, fixed palettes, fixed numeric
// formatting, so identical data yields identical bytes.

// Top view of component `comp` over the (x, xi) plane; the color scale end
// points are written into the figure.
std::string svg_heatmap(const MomentsCsv& data, int comp, const std::string& title);

// One polyline over x per stochastic node.
std::string svg_line_overlay(const MomentsCsv& data, int comp, const std::string& title);

struct SupportPoint {
  double x = 0.0;
  double u = 0.0;
  double weight = 0.0;
};

// Measure support over the (x, u) plane, marker area scaled by weight.
std::string svg_support_scatter(const std::vector<SupportPoint>& pts, const std::string& title);

}  // namespace ym

#endif  // YM_SVG_HPP_
