#ifndef YM_TIME_INTEGRATION_HPP_
#define YM_TIME_INTEGRATION_HPP_

#include <functional>
#include <vector>

#include "ym/schemes.hpp"

namespace ym {

struct BlowUpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepDiagnostics {
  long step = 0;
  double t = 0.0;   // time after the step
  double dt = 0.0;
  double conservation_residual = 0.0;
  long lp_iterations = 0;
};

struct RunState {
  MomentField moments;
  double t = 0.0;
  long step = 0;
};

// One Shu-Osher SSP-RK3 step of the semi-discrete schemes (orders 2 and 5).
// The returned boundary fluxes are the effective conservative-form fluxes of
// the full step (weights 1/6, 1/6, 2/3 over the three stages).
MomentField ssp_rk3_step(const SchemeContext& ctx, const MomentField& u, double dt,
                         std::vector<State>* flux_left, std::vector<State>* flux_right,
                         long* lp_iterations);

// Same Shu-Osher stages on a scalar ODE u' = f(u); used by order checks.
double ssp_rk3_scalar(const std::function<double(double)>& f, double u, double dt);

using StepCallback = std::function<void(const RunState&, const StepDiagnostics&)>;

// Advances state to t_target with CFL-limited steps, clipping the last step
// onto the target. The callback fires after every completed step.
void advance_to(const SchemeContext& ctx, RunState& state, double t_target,
                const StepCallback& on_step = nullptr);

}  // namespace ym

#endif  // YM_TIME_INTEGRATION_HPP_
