#include "ym/reconstruct.hpp"

#include <algorithm>
#include <cmath>

namespace ym {

double minmod(std::span<const double> z) {
  bool all_pos = true, all_neg = true;
  for (double v : z) {
    all_pos &= (v > 0.0);
    all_neg &= (v < 0.0);
  }
  if (all_pos) return *std::min_element(z.begin(), z.end());
  if (all_neg) return *std::max_element(z.begin(), z.end());
  return 0.0;
}

double minmod(std::initializer_list<double> z) {
  return minmod(std::span<const double>(z.begin(), z.size()));
}

namespace {

// Limited half-slope (dx/2 * u_x) from three consecutive values; the grid
// spacing cancels between numerator and the dx/2 factor.
double half_slope(double um, double u0, double up, double theta) {
  return 0.5 * minmod({theta * (u0 - um), 0.5 * (up - um), theta * (up - u0)});
}

}  // namespace

InterfaceStates linear_reconstruct(const std::array<State, 4>& stencil, int ncomp, double theta,
                                   const std::optional<LcdPair>& lcd) {
  std::array<State, 4> g = stencil;
  if (lcd) {
    for (auto& u : g) u = matvec(lcd->second, u);
  }
  State gm{}, gp{};
  for (int k = 0; k < ncomp; ++k) {
    gm[k] = g[1][k] + half_slope(g[0][k], g[1][k], g[2][k], theta);
    gp[k] = g[2][k] - half_slope(g[1][k], g[2][k], g[3][k], theta);
  }
  if (lcd) {
    gm = matvec(lcd->first, gm);
    gp = matvec(lcd->first, gp);
  }
  return {gm, gp};
}

double wenoz_interpolate_left(const std::array<double, 5>& u) {
  const double um2 = u[0], um1 = u[1], u0 = u[2], up1 = u[3], up2 = u[4];
  const double p0 = 3.0 / 8.0 * um2 - 5.0 / 4.0 * um1 + 15.0 / 8.0 * u0;
  const double p1 = -1.0 / 8.0 * um1 + 3.0 / 4.0 * u0 + 3.0 / 8.0 * up1;
  const double p2 = 3.0 / 8.0 * u0 + 3.0 / 4.0 * up1 - 1.0 / 8.0 * up2;
  const double b0 = 13.0 / 12.0 * std::pow(um2 - 2.0 * um1 + u0, 2) +
                    0.25 * std::pow(um2 - 4.0 * um1 + 3.0 * u0, 2);
  const double b1 =
      13.0 / 12.0 * std::pow(um1 - 2.0 * u0 + up1, 2) + 0.25 * std::pow(um1 - up1, 2);
  const double b2 = 13.0 / 12.0 * std::pow(u0 - 2.0 * up1 + up2, 2) +
                    0.25 * std::pow(3.0 * u0 - 4.0 * up1 + up2, 2);
  const double tau5 = std::abs(b2 - b0);
  constexpr double eps = 1e-12;
  const double a0 = 1.0 / 16.0 * (1.0 + std::pow(tau5 / (b0 + eps), 2));
  const double a1 = 5.0 / 8.0 * (1.0 + std::pow(tau5 / (b1 + eps), 2));
  const double a2 = 5.0 / 16.0 * (1.0 + std::pow(tau5 / (b2 + eps), 2));
  const double s = a0 + a1 + a2;
  return (a0 * p0 + a1 * p1 + a2 * p2) / s;
}

double wenoz_interpolate_right(const std::array<double, 5>& u) {
  return wenoz_interpolate_left({u[4], u[3], u[2], u[1], u[0]});
}

InterfaceStates wenoz_reconstruct_system(const std::array<State, 6>& stencil, int ncomp,
                                         const std::optional<LcdPair>& lcd) {
  std::array<State, 6> g = stencil;
  if (lcd) {
    for (auto& u : g) u = matvec(lcd->second, u);
  }
  State gm{}, gp{};
  for (int k = 0; k < ncomp; ++k) {
    gm[k] = wenoz_interpolate_left({g[0][k], g[1][k], g[2][k], g[3][k], g[4][k]});
    gp[k] = wenoz_interpolate_right({g[1][k], g[2][k], g[3][k], g[4][k], g[5][k]});
  }
  if (lcd) {
    gm = matvec(lcd->first, gm);
    gp = matvec(lcd->first, gp);
  }
  return {gm, gp};
}

}  // namespace ym
