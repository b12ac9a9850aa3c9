#include "ym/collocation.hpp"

namespace ym {

MomentField sample_initial_data(const std::function<State(double, double)>& init,
                                const SpatialGrid& spatial, const StochasticGrid& stochastic) {
  MomentField u(stochastic.nxi, spatial.nx);
  for (int i = 0; i < stochastic.nxi; ++i)
    for (int j = 0; j < spatial.nx; ++j) u.at(i, j) = init(spatial.center(j), stochastic.node(i));
  return u;
}

CollocationResult run_collocation(const ProblemDef& problem, const SpatialGrid& spatial,
                                  const StochasticGrid& stochastic, const PhaseGrid& phase,
                                  SchemeConfig config, const EntropySpec& entropy,
                                  double lambda_f,
                                  const std::function<State(double, double)>& init,
                                  double t_final) {
  config.mode = Mode::Collocation;
  SchemeContext ctx(problem, spatial, stochastic, phase, config, entropy, lambda_f);
  RunState state;
  state.moments = sample_initial_data(init, spatial, stochastic);
  advance_to(ctx, state, t_final);
  return {std::move(state.moments), state.step};
}

}  // namespace ym
