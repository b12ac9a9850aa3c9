#include <cmath>
#include <limits>

#include "doctest.h"
#include "ym/collocation.hpp"
#include "ym/time_integration.hpp"

using namespace ym;

TEST_CASE("scalar rk3 one step of u' = -u") {
  double u = ssp_rk3_scalar([](double v) { return -v; }, 1.0, 0.1);
  // third-order Taylor truncation of exp(-0.1)
  CHECK(u == doctest::Approx(0.9048333333333334).epsilon(1e-15));
}

TEST_CASE("scalar rk3 is third order") {
  auto error_at_1 = [](int steps) {
    double u = 1.0, dt = 1.0 / steps;
    for (int k = 0; k < steps; ++k) u = ssp_rk3_scalar([](double v) { return -v; }, u, dt);
    return std::abs(u - std::exp(-1.0));
  };
  double e1 = error_at_1(20), e2 = error_at_1(40);
  CHECK(e1 / e2 >= std::pow(2.0, 2.9));
}

TEST_CASE("zero rhs leaves the state unchanged") {
  ProblemDef p = burgers();
  SpatialGrid spatial(0.0, 1.0, 12);
  StochasticGrid stochastic(-1.0, 1.0, 1);
  PhaseGrid phase = build_phase_grid({{-1.0, 1.0}}, {11});
  MomentField u(1, 12);
  for (auto& v : u.values) v = State{0.0, 0.0};  // f(0) = 0 everywhere
  SchemeConfig cfg;
  cfg.order = 2;
  SchemeContext ctx(p, spatial, stochastic, phase, cfg, p.entropies.front(), 1.0);
  MomentField next = ssp_rk3_step(ctx, u, 0.01, nullptr, nullptr, nullptr);
  for (const State& v : next.values) CHECK(v[0] == doctest::Approx(0.0));
}

TEST_CASE("advance_to hits the final time exactly") {
  ProblemDef p = burgers();
  SpatialGrid spatial(0.0, 1.0, 40);
  StochasticGrid stochastic(-1.0, 1.0, 3);
  PhaseGrid phase = build_phase_grid({{-1.5, 1.5}}, {40});
  SchemeConfig cfg;
  cfg.order = 1;
  SchemeContext ctx(p, spatial, stochastic, phase, cfg, p.entropies.front(), 1.0);
  RunState st;
  st.moments = sample_initial_data(initial_data("1"), spatial, stochastic);

  // identity when already there
  advance_to(ctx, st, 0.0);
  CHECK(st.step == 0);

  std::vector<StepDiagnostics> diags;
  advance_to(ctx, st, 0.25, [&](const RunState&, const StepDiagnostics& d) {
    diags.push_back(d);
  });
  CHECK(st.t == 0.25);
  CHECK(st.step == long(diags.size()));
  CHECK(diags.back().t == 0.25);
  // the clipped last step is no larger than its predecessor
  if (diags.size() > 1) CHECK(diags.back().dt <= diags[diags.size() - 2].dt * (1.0 + 1e-12));
  for (const auto& d : diags) CHECK(d.conservation_residual < 1e-12);
}

TEST_CASE("worker count does not change a full run") {
  ProblemDef p = isentropic_euler(1.0, 1.5);
  SpatialGrid spatial(-1.0, 1.0, 20);
  StochasticGrid stochastic(-1.0, 1.0, 3);
  PhaseGrid phase = build_phase_grid({{0.3, 1.8}, {0.3, 1.3}}, {10, 10});
  auto run = [&](int workers) {
    SchemeConfig cfg;
    cfg.order = 2;
    cfg.workers = workers;
    SchemeContext ctx(p, spatial, stochastic, phase, cfg, p.entropies.front(), 1.0);
    RunState st;
    st.moments = sample_initial_data(initial_data("2"), spatial, stochastic);
    advance_to(ctx, st, 0.05);
    return st.moments;
  };
  MomentField a = run(1), b = run(4);
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    CHECK(a.values[k][0] == b.values[k][0]);
    CHECK(a.values[k][1] == b.values[k][1]);
  }
}

TEST_CASE("blow-up raises instead of propagating NaN") {
  ProblemDef p = burgers();
  SpatialGrid spatial(0.0, 1.0, 8);
  StochasticGrid stochastic(-1.0, 1.0, 1);
  PhaseGrid phase = build_phase_grid({{-1.0, 1.0}}, {9});
  SchemeConfig cfg;
  cfg.order = 2;
  cfg.mode = Mode::Collocation;
  SchemeContext ctx(p, spatial, stochastic, phase, cfg, p.entropies.front(), 1.0);
  MomentField u(1, 8);
  u.values[3][0] = std::numeric_limits<double>::quiet_NaN();
  RunState st;
  st.moments = u;
  CHECK_THROWS_AS(advance_to(ctx, st, 0.1), BlowUpError);
}
