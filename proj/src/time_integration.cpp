#include "ym/time_integration.hpp"

#include <cmath>
#include <string>

namespace ym {

namespace {

void check_finite(const MomentField& u, long step, int ncomp) {
  for (const State& v : u.values)
    for (int k = 0; k < ncomp; ++k)
      if (!std::isfinite(v[k]))
        throw BlowUpError("non-finite moment after step " + std::to_string(step));
}

void accumulate(std::vector<State>* acc, const std::vector<State>& stage, double w, int ncomp) {
  if (!acc) return;
  if (acc->size() != stage.size()) acc->assign(stage.size(), State{});
  for (std::size_t i = 0; i < stage.size(); ++i)
    for (int k = 0; k < ncomp; ++k) (*acc)[i][k] += w * stage[i][k];
}

MomentField euler_stage(const MomentField& u, const RhsOutput& r, double dt, int ncomp) {
  MomentField out(u.nxi, u.nx);
  for (std::size_t c = 0; c < u.values.size(); ++c)
    for (int k = 0; k < ncomp; ++k)
      out.values[c][k] = u.values[c][k] + dt * r.dudt.values[c][k];
  return out;
}

void blend(MomentField* io, const MomentField& u, double wu, double wio, int ncomp) {
  for (std::size_t c = 0; c < u.values.size(); ++c)
    for (int k = 0; k < ncomp; ++k)
      io->values[c][k] = wu * u.values[c][k] + wio * io->values[c][k];
}

}  // namespace

double ssp_rk3_scalar(const std::function<double(double)>& f, double u, double dt) {
  double u1 = u + dt * f(u);
  double u2 = 0.75 * u + 0.25 * (u1 + dt * f(u1));
  return u / 3.0 + 2.0 / 3.0 * (u2 + dt * f(u2));
}

MomentField ssp_rk3_step(const SchemeContext& ctx, const MomentField& u, double dt,
                         std::vector<State>* flux_left, std::vector<State>* flux_right,
                         long* lp_iterations) {
  const int ncomp = ctx.problem().ncomp;
  if (flux_left) flux_left->clear();
  if (flux_right) flux_right->clear();

  RhsOutput r0 = ctx.rhs(u);
  MomentField u1 = euler_stage(u, r0, dt, ncomp);
  accumulate(flux_left, r0.flux_left, 1.0 / 6.0, ncomp);
  accumulate(flux_right, r0.flux_right, 1.0 / 6.0, ncomp);

  RhsOutput r1 = ctx.rhs(u1);
  MomentField u2 = euler_stage(u1, r1, dt, ncomp);
  blend(&u2, u, 0.75, 0.25, ncomp);
  accumulate(flux_left, r1.flux_left, 1.0 / 6.0, ncomp);
  accumulate(flux_right, r1.flux_right, 1.0 / 6.0, ncomp);

  RhsOutput r2 = ctx.rhs(u2);
  MomentField u3 = euler_stage(u2, r2, dt, ncomp);
  blend(&u3, u, 1.0 / 3.0, 2.0 / 3.0, ncomp);
  accumulate(flux_left, r2.flux_left, 2.0 / 3.0, ncomp);
  accumulate(flux_right, r2.flux_right, 2.0 / 3.0, ncomp);

  if (lp_iterations) *lp_iterations += r0.lp_iterations + r1.lp_iterations + r2.lp_iterations;
  return u3;
}

void advance_to(const SchemeContext& ctx, RunState& state, double t_target,
                const StepCallback& on_step) {
  constexpr long kMaxSteps = 10'000'000;
  const int ncomp = ctx.problem().ncomp;
  const double dx = ctx.spatial().dx;
  // Relative slack so accumulated round-off cannot leave a vanishing final
  // step behind.
  const double t_eps = 1e-12 * std::max(1.0, std::abs(t_target));

  while (state.t < t_target - t_eps) {
    if (state.step >= kMaxSteps)
      throw BlowUpError("step limit reached before t = " + std::to_string(t_target));
    double dt = ctx.cfl_dt(state.moments, t_target - state.t);
    if (!(dt > 0.0)) throw BlowUpError("non-positive time step");

    long lp_iters = 0;
    std::vector<State> hl, hr;
    MomentField next =
        ctx.config().order == 1
            ? ctx.first_order_step(state.moments, dt, &hl, &hr, &lp_iters)
            : ssp_rk3_step(ctx, state.moments, dt, &hl, &hr, &lp_iters);
    check_finite(next, state.step + 1, ncomp);
    AuditResult audit = conservation_audit(state.moments, next, dt, dx, hl, hr, ncomp);

    state.moments = std::move(next);
    state.t = (t_target - state.t <= dt * (1.0 + 1e-12)) ? t_target : state.t + dt;
    ++state.step;

    if (on_step) {
      StepDiagnostics d;
      d.step = state.step;
      d.t = state.t;
      d.dt = dt;
      d.conservation_residual = audit.max_abs;
      d.lp_iterations = lp_iters;
      on_step(state, d);
    }
  }
}

}  // namespace ym
