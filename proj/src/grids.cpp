#include "ym/grids.hpp"

#include <stdexcept>

namespace ym {

SpatialGrid::SpatialGrid(double a, double b, int n) : x_min(a), x_max(b), nx(n) {
  if (!(b > a) || n < 1) throw ConfigError("spatial grid: need x_max > x_min and N_x >= 1");
  dx = (b - a) / n;
}

StochasticGrid::StochasticGrid(double a, double b, int n) : xi_min(a), xi_max(b), nxi(n) {
  if (!(b > a) || n < 1) throw ConfigError("stochastic grid: need xi_max > xi_min and N_xi >= 1");
  dxi = (b - a) / n;
  p0 = 1.0 / (b - a);
}

PhaseGrid build_phase_grid(const std::vector<std::pair<double, double>>& bounds,
                           const std::vector<int>& counts) {
  if (bounds.empty() || bounds.size() > 2 || bounds.size() != counts.size())
    throw ConfigError("phase grid: need 1 or 2 components with matching bounds/counts");
  PhaseGrid g;
  g.ncomp = int(bounds.size());
  g.count = {1, 1};
  std::size_t total = 1;
  g.du = 1.0;
  for (int c = 0; c < g.ncomp; ++c) {
    auto [lo, hi] = bounds[c];
    if (!(hi > lo)) throw ConfigError("phase grid: degenerate interval in component " + std::to_string(c));
    if (counts[c] < 2) throw ConfigError("phase grid: need at least 2 cells per component");
    g.u_min[c] = lo;
    g.u_max[c] = hi;
    g.count[c] = counts[c];
    g.width[c] = (hi - lo) / counts[c];
    g.du *= g.width[c];
    total *= std::size_t(counts[c]);
  }
  g.centers.resize(total);
  if (g.ncomp == 1) {
    for (int k = 0; k < g.count[0]; ++k) g.centers[k] = {g.axis_center(0, k), 0.0};
  } else {
    std::size_t l = 0;
    for (int k0 = 0; k0 < g.count[0]; ++k0)
      for (int k1 = 0; k1 < g.count[1]; ++k1)
        g.centers[l++] = {g.axis_center(0, k0), g.axis_center(1, k1)};
  }
  return g;
}

std::size_t flatten_index(const std::array<int, 2>& multi, const std::array<int, 2>& counts,
                          int ncomp) {
  std::size_t flat = 0;
  for (int c = 0; c < ncomp; ++c) {
    if (multi[c] < 0 || multi[c] >= counts[c])
      throw std::logic_error("flatten_index: component index out of range");
    flat = flat * std::size_t(counts[c]) + std::size_t(multi[c]);
  }
  return flat;
}

std::array<int, 2> unflatten_index(std::size_t flat, const std::array<int, 2>& counts, int ncomp) {
  std::array<int, 2> multi{0, 0};
  for (int c = ncomp - 1; c >= 0; --c) {
    multi[c] = int(flat % std::size_t(counts[c]));
    flat /= std::size_t(counts[c]);
  }
  if (flat != 0) throw std::logic_error("unflatten_index: flat index out of range");
  return multi;
}

std::vector<std::vector<double>> marginal(const MeasureField& m, int component,
                                          const PhaseGrid& phase) {
  if (component < 0 || component >= phase.ncomp)
    throw std::logic_error("marginal: component index out of range");
  std::vector<std::vector<double>> out(m.nxi, std::vector<double>(phase.count[component], 0.0));
  // Width of the integrated-out components.
  double other_width = phase.du / phase.width[component];
  for (int i = 0; i < m.nxi; ++i) {
    const double* w = m.row(i);
    for (std::size_t l = 0; l < phase.size(); ++l) {
      auto multi = unflatten_index(l, phase.count, phase.ncomp);
      out[i][multi[component]] += w[l] * other_width;
    }
  }
  return out;
}

}  // namespace ym
