#ifndef YM_COLLOCATION_HPP_
#define YM_COLLOCATION_HPP_

#include <functional>

#include "ym/time_integration.hpp"

namespace ym {

// Reference path: identical drivers and fluxes with point values f(u_{i,j})
// in place of measure averages. Used for side-by-side comparisons.
struct CollocationResult {
  MomentField moments;
  long steps = 0;
};

MomentField sample_initial_data(const std::function<State(double, double)>& init,
                                const SpatialGrid& spatial, const StochasticGrid& stochastic);

CollocationResult run_collocation(const ProblemDef& problem, const SpatialGrid& spatial,
                                  const StochasticGrid& stochastic, const PhaseGrid& phase,
                                  SchemeConfig config, const EntropySpec& entropy,
                                  double lambda_f,
                                  const std::function<State(double, double)>& init,
                                  double t_final);

}  // namespace ym

#endif  // YM_COLLOCATION_HPP_
