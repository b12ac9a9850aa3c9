#ifndef YM_LP_HPP_
#define YM_LP_HPP_

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "ym/grids.hpp"
#include "ym/problems.hpp"
#include "ym/state.hpp"

namespace ym {

struct LpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Static part of the reconstruction LP: equality-row columns after row
// equilibration, objective at phase-cell centers, and the row scales.
// Shared across every moment on the same (phase grid, entropy) pair.
struct LpColumns {
  int nrows = 0;         // n + 1 equality rows; row 0 is normalization
  std::size_t ncols = 0;
  std::vector<double> a;    // column major, a[l * nrows + r], scaled
  std::vector<double> obj;  // eta(u_l); uniform positive factors dropped
  std::array<double, 3> row_scale{};
};

struct LpInstance {
  std::shared_ptr<const LpColumns> cols;
  std::array<double, 3> b{};  // scaled right-hand side
  double upper = 0.0;         // lambda_F / du, uniform box bound
  double du = 0.0;
  double report_scale = 1.0;  // dxi * du * p0, reapplied to logged objectives
  State moment{};             // after hull projection

  int nrows() const { return cols->nrows; }
  std::size_t ncols() const { return cols->ncols; }
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

// Basis description for warm starts: the basic column set plus the nonbasic
// columns resting at their upper bound.
struct LpBasis {
  bool valid = false;
  std::array<int, 3> basic{-1, -1, -1};
  int nbasic = 0;
  std::vector<int> upper;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  // Nonzero weights, sorted by flat phase index.
  std::vector<std::pair<std::size_t, double>> support;
  double objective = 0.0;         // sum eta(u_l) mu_l (stored scaling)
  double objective_scaled = 0.0;  // with the dropped dxi*du*p0 factor restored
  int iterations = 0;
  int farkas_row = -1;  // violated equality row when infeasible
  LpBasis basis;
};

std::shared_ptr<const LpColumns> build_lp_columns(const PhaseGrid& phase,
                                                  const EntropySpec& entropy);

// Assembles the per-stochastic-point LP for one moment. Moments outside the
// convex hull of phase centers by at most 1e-7 per component are projected
// onto the hull boundary; larger violations are left in place and surface as
// an infeasible solve.
LpInstance assemble_lp(const State& moment, const PhaseGrid& phase, const EntropySpec& entropy,
                       double lambda_f, double dxi = 1.0, double p0 = 1.0,
                       std::shared_ptr<const LpColumns> cached = nullptr);

LpSolution solve(const LpInstance& instance, const LpBasis* warm_start = nullptr);

// Fixed-order plain-text tableau dump (rows, then bounds, then objective)
// for cross-checking against external solvers.
void dump_lp(const LpInstance& instance, std::ostream& os);

using Support = std::vector<std::pair<std::size_t, double>>;

State measure_mean(const Support& weights, const PhaseGrid& phase);
State measure_flux_average(const Support& weights, const PhaseGrid& phase,
                           const ProblemDef& problem, double x);
double measure_speed_average(const Support& weights, const PhaseGrid& phase,
                             const ProblemDef& problem, double x = 0.0);

// Dense-weight variants operating on one MeasureField row.
State measure_mean(const double* weights, const PhaseGrid& phase);

// Cached reconstruction engine: one set of columns per (phase, entropy,
// lambda_F), solved for many moments. Pure given (moment, warm) and safe to
// share across threads as long as each warm-start cache entry is owned by a
// single worker.
class LpEngine {
 public:
  LpEngine(const PhaseGrid& phase, const EntropySpec& entropy, double lambda_f, double dxi = 1.0,
           double p0 = 1.0);

  LpInstance instance(const State& moment) const;
  LpSolution solve_moment(const State& moment, const LpBasis* warm = nullptr) const;
  const PhaseGrid& phase() const { return *phase_; }
  double lambda_f() const { return lambda_f_; }

 private:
  const PhaseGrid* phase_;
  EntropySpec entropy_;
  double lambda_f_;
  double dxi_, p0_;
  std::shared_ptr<const LpColumns> cols_;
};

}  // namespace ym

#endif  // YM_LP_HPP_
