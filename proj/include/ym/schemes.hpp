#ifndef YM_SCHEMES_HPP_
#define YM_SCHEMES_HPP_

#include <span>
#include <vector>

#include "ym/grids.hpp"
#include "ym/lp.hpp"
#include "ym/problems.hpp"
#include "ym/reconstruct.hpp"

namespace ym {

enum class Mode { YoungMeasure, Collocation };
enum class FluxVariant { ReconstructThenAverage, AverageThenReconstruct };
enum class CorrectionVariant { Flux, PointValue };
enum class Boundary { Free, Periodic };

struct SchemeConfig {
  int order = 1;  // 1 | 2 | 5
  Mode mode = Mode::YoungMeasure;
  FluxVariant flux_variant = FluxVariant::ReconstructThenAverage;
  CorrectionVariant correction_variant = CorrectionVariant::Flux;
  double theta = 1.5;
  double cfl = 0.45;
  Boundary bc = Boundary::Free;
  int workers = 1;

  void validate() const;
};

struct RhsOutput {
  MomentField dudt;
  double max_dt = 0.0;  // informational; the driver's cfl_dt is authoritative
  std::vector<State> flux_left;   // H at the left domain end, per i
  std::vector<State> flux_right;  // H at the right domain end, per i
  long lp_iterations = 0;
};

double local_speed(const State& ul, const State& ur, const ProblemDef& problem, double x);

State llf_flux(const State& ul, const State& ur, double a, const ProblemDef& problem, double x);

// Correction terms at j+1/2 from five consecutive interface fluxes
// F_{j-3/2} .. F_{j+5/2}.
void aweno_correction(const std::array<State, 5>& iface_fluxes, double dx, int ncomp, State* fxx,
                      State* fxxxx);
// Legacy variant from six consecutive point fluxes F_{j-2} .. F_{j+3}.
void aweno_correction_legacy(const std::array<State, 6>& point_fluxes, double dx, int ncomp,
                             State* fxx, State* fxxxx);

struct AuditResult {
  double max_abs = 0.0;
  double max_rel = 0.0;
};

// Telescoping-sum check of the conservative form over one completed step.
AuditResult conservation_audit(const MomentField& before, const MomentField& after, double dt,
                               double dx, std::span<const State> flux_left,
                               std::span<const State> flux_right, int ncomp);

// Owns the LP engine, warm-start caches, and the flux assembly for one
// (problem, grids, scheme) combination. rhs() and first_order_step() are
// pure functions of the moment field up to warm-start pivot paths, which
// depend only on the per-(i,j) solve history and never on worker count.
class SchemeContext {
 public:
  SchemeContext(const ProblemDef& problem, const SpatialGrid& spatial,
                const StochasticGrid& stochastic, const PhaseGrid& phase,
                const SchemeConfig& config, const EntropySpec& entropy, double lambda_f);

  RhsOutput rhs(const MomentField& moments) const;

  MomentField first_order_step(const MomentField& moments, double dt,
                               std::vector<State>* flux_left = nullptr,
                               std::vector<State>* flux_right = nullptr,
                               long* lp_iterations = nullptr) const;

  // CFL time step from the current field; `remaining` caps the result and is
  // returned outright when nothing moves.
  double cfl_dt(const MomentField& moments, double remaining) const;

  // One reconstruction LP per (i, j); used for support dumps and marginals.
  std::vector<LpSolution> reconstruct_measures(const MomentField& moments) const;

  const ProblemDef& problem() const { return *problem_; }
  const SpatialGrid& spatial() const { return *spatial_; }
  const StochasticGrid& stochastic() const { return *stochastic_; }
  const PhaseGrid& phase() const { return *phase_; }
  const SchemeConfig& config() const { return config_; }
  const LpEngine& engine() const { return engine_; }

 private:
  const ProblemDef* problem_;
  const SpatialGrid* spatial_;
  const StochasticGrid* stochastic_;
  const PhaseGrid* phase_;
  SchemeConfig config_;
  LpEngine engine_;

  bool ym() const { return config_.mode == Mode::YoungMeasure; }

  // Warm-start caches, one slot per solve site; each slot is touched only by
  // the worker owning that site.
  mutable std::vector<LpBasis> warm_cell_;     // (i, j)
  mutable std::vector<LpBasis> warm_iface_;    // (i, interface, side)

  LpSolution solve_cell(int i, int j, const State& moment) const;

  std::vector<State> extend_row(const MomentField& field, int i, int ghosts) const;
};

}  // namespace ym

#endif  // YM_SCHEMES_HPP_
