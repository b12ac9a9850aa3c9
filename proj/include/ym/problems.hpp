#ifndef YM_PROBLEMS_HPP_
#define YM_PROBLEMS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ym/grids.hpp"
#include "ym/state.hpp"

namespace ym {

struct PositivityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EntropyTag { Quadratic, Kruzhkov, Euler, Kinetic };

struct EntropySpec {
  EntropyTag tag = EntropyTag::Quadratic;
  double kruzhkov_c = 0.5;  // only for Kruzhkov
  std::function<double(const State&)> evaluate;
  std::string name;
};

// Pair (R, R^-1) diagonalizing the interface-averaged Jacobian. A factory
// returns nullopt when the decomposition degenerates (near-sonic average);
// callers then fall back to component-wise reconstruction.
using LcdPair = std::pair<Mat2, Mat2>;
using LcdFactory = std::function<std::optional<LcdPair>(const State&, const State&)>;

struct ProblemDef {
  std::string id;
  int ncomp = 1;
  bool x_dependent_flux = false;
  std::function<State(const State&, double x)> flux;
  std::function<State(const State&, double x)> eigenvalues;  // sorted ascending
  LcdFactory lcd_factory;                                    // empty when none exists
  std::vector<EntropySpec> entropies;                        // first entry is the default
  // Default phase box per component, used when the config does not override.
  std::vector<std::pair<double, double>> default_phase_box;

  double max_wave_speed(const State& u, double x) const {
    State lam = eigenvalues(u, x);
    double s = 0.0;
    for (int k = 0; k < ncomp; ++k) s = std::max(s, std::abs(lam[k]));
    return s;
  }
  const EntropySpec& entropy(const std::string& name) const;
};

inline constexpr double kDensityFloor = 1e-10;

ProblemDef burgers();
ProblemDef isentropic_euler(double kappa, double gamma);
ProblemDef discontinuous_flux(char variant);  // 'A' or 'B'
ProblemDef pressureless_gas();
ProblemDef make_problem(const std::string& id, double kappa, double gamma);

// Appendix-style eigenvector pair for the isentropic Euler system built from
// arithmetic averages of rho and v. Returns nullopt near sonic states.
std::optional<LcdPair> euler_lcd_matrices(const State& ul, const State& ur, double kappa,
                                          double gamma);

EntropySpec quadratic_entropy();
EntropySpec kruzhkov_entropy(double c);

// Initial conditions of the reproduced experiments, keyed "1".."7" (or
// "example1".."example7"), plus "smooth-burgers" (0.5 + 0.3 sin(2 pi x))
// used by convergence studies.
std::function<State(double x, double xi)> initial_data(const std::string& example_id);

}  // namespace ym

#endif  // YM_PROBLEMS_HPP_
