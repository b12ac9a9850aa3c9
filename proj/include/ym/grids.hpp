#ifndef YM_GRIDS_HPP_
#define YM_GRIDS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ym/state.hpp"

namespace ym {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform spatial grid on [x_min, x_max] with N_x cells.
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  int nx = 0;
  double dx = 0.0;

  SpatialGrid() = default;
  SpatialGrid(double a, double b, int n);

  double center(int j) const { return x_min + (j + 0.5) * dx; }
  double interface(int j) const { return x_min + j * dx; }  // x_{j-1/2} of cell j
};

// Equidistant nodes in the random parameter; nodes are midpoints of N_xi
// equal subintervals of [xi_min, xi_max]. N_xi = 1 encodes a deterministic
// problem.
struct StochasticGrid {
  double xi_min = -1.0;
  double xi_max = 1.0;
  int nxi = 1;
  double dxi = 0.0;
  double p0 = 0.0;  // uniform density 1/|Omega|

  StochasticGrid() = default;
  StochasticGrid(double a, double b, int n);

  double node(int i) const { return xi_min + (i + 0.5) * dxi; }
};

// Tensor discretization of state space; cell centers are midpoints of a
// uniform partition of each component interval, laid out row major.
struct PhaseGrid {
  int ncomp = 0;
  std::array<double, 2> u_min{};
  std::array<double, 2> u_max{};
  std::array<int, 2> count{};
  std::array<double, 2> width{};  // per-component cell width
  double du = 0.0;                // phase-space volume element
  std::vector<State> centers;     // flattened, row major over component indices

  std::size_t size() const { return centers.size(); }
  // Center of the k-th cell of component c (marginal axis).
  double axis_center(int c, int k) const { return u_min[c] + (k + 0.5) * width[c]; }
};

PhaseGrid build_phase_grid(const std::vector<std::pair<double, double>>& bounds,
                           const std::vector<int>& counts);

std::size_t flatten_index(const std::array<int, 2>& multi, const std::array<int, 2>& counts,
                          int ncomp);
std::array<int, 2> unflatten_index(std::size_t flat, const std::array<int, 2>& counts, int ncomp);

// Moments u_{i,j} on the (xi, x) grid; the evolved unknowns.
struct MomentField {
  int nxi = 0;
  int nx = 0;
  std::vector<State> values;  // index i * nx + j

  MomentField() = default;
  MomentField(int ni, int nj) : nxi(ni), nx(nj), values(std::size_t(ni) * nj, State{}) {}

  State& at(int i, int j) { return values[std::size_t(i) * nx + j]; }
  const State& at(int i, int j) const { return values[std::size_t(i) * nx + j]; }
};

// Dense nonnegative weights mu_{i,l} over phase cells, one row per
// stochastic node.
struct MeasureField {
  int nxi = 0;
  std::size_t ncells = 0;
  std::vector<double> weights;  // index i * ncells + l

  MeasureField() = default;
  MeasureField(int ni, std::size_t nc)
      : nxi(ni), ncells(nc), weights(std::size_t(ni) * nc, 0.0) {}

  double* row(int i) { return weights.data() + std::size_t(i) * ncells; }
  const double* row(int i) const { return weights.data() + std::size_t(i) * ncells; }
};

// Integrates the measure over all phase components except `component`;
// returns per-(i, cell) densities on that component's axis.
std::vector<std::vector<double>> marginal(const MeasureField& m, int component,
                                          const PhaseGrid& phase);

}  // namespace ym

#endif  // YM_GRIDS_HPP_
