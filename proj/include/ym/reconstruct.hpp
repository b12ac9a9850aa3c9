#ifndef YM_RECONSTRUCT_HPP_
#define YM_RECONSTRUCT_HPP_

#include <initializer_list>
#include <optional>
#include <span>

#include "ym/problems.hpp"
#include "ym/state.hpp"

namespace ym {

// One-sided values at an interface: left limit u^- and right limit u^+.
struct InterfaceStates {
  State minus{};
  State plus{};
};

double minmod(std::span<const double> z);
double minmod(std::initializer_list<double> z);

// Generalized-minmod piecewise-linear reconstruction at the interface
// between stencil cells 1 and 2 (stencil holds u_{j-1}, u_j, u_{j+1},
// u_{j+2}). With an LCD pair the limiter acts on the characteristic
// variables. Grid spacing cancels out of the limited slopes.
InterfaceStates linear_reconstruct(const std::array<State, 4>& stencil, int ncomp, double theta,
                                   const std::optional<LcdPair>& lcd);

// Fifth-order WENO-Z interpolation of the left value at j+1/2 from
// u_{j-2..j+2}; p = 2, eps = 1e-12.
double wenoz_interpolate_left(const std::array<double, 5>& stencil);
// Mirror image: right value at j+1/2 from u_{j-1..j+3}.
double wenoz_interpolate_right(const std::array<double, 5>& stencil);

// Both one-sided values at the interface between stencil cells 2 and 3
// (stencil holds u_{j-2..j+3}), in characteristic variables when an LCD
// pair is given.
InterfaceStates wenoz_reconstruct_system(const std::array<State, 6>& stencil, int ncomp,
                                         const std::optional<LcdPair>& lcd);

}  // namespace ym

#endif  // YM_RECONSTRUCT_HPP_
