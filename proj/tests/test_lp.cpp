#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ym/lp.hpp"

using namespace ym;

TEST_CASE("assembled dimensions and bounds") {
  PhaseGrid p = build_phase_grid({{-1.0, 1.0}}, {4});
  LpInstance inst = assemble_lp({0.25, 0.0}, p, quadratic_entropy(), 1.0);
  CHECK(inst.nrows() == 2);
  CHECK(inst.ncols() == 4);
  CHECK(inst.upper == doctest::Approx(2.0));  // 1 / 0.5

  PhaseGrid p7 = build_phase_grid({{-2.0, 2.0}}, {100});
  LpInstance i7 = assemble_lp({0.0, 0.0}, p7, quadratic_entropy(), 0.05);
  CHECK(i7.upper == doctest::Approx(1.25));  // 0.05 / 0.04
}

TEST_CASE("structural infeasibility rejected at assembly") {
  PhaseGrid p = build_phase_grid({{-1.0, 1.0}}, {4});
  // lambda_F * ncells = 0.1 * 4 < 1: mass can never reach 1
  CHECK_THROWS_AS(assemble_lp({0.0, 0.0}, p, quadratic_entropy(), 0.1), LpError);
}

TEST_CASE("symmetric two-point support at moment zero") {
  PhaseGrid p = build_phase_grid({{-1.0, 1.0}}, {4});
  LpEngine engine(p, quadratic_entropy(), 1.0);
  LpSolution sol = engine.solve_moment({0.0, 0.0});
  REQUIRE(sol.status == LpStatus::Optimal);
  REQUIRE(sol.support.size() == 2);
  CHECK(sol.support[0].first == 1);  // center -0.25
  CHECK(sol.support[1].first == 2);  // center +0.25
  CHECK(sol.support[0].second == doctest::Approx(1.0 / (2.0 * p.du)));
  CHECK(sol.support[1].second == doctest::Approx(1.0 / (2.0 * p.du)));
}

TEST_CASE("atomic solutions at phase centers") {
  PhaseGrid p = build_phase_grid({{-1.5, 1.5}}, {30});
  LpEngine engine(p, quadratic_entropy(), 1.0);
  for (std::size_t l : {std::size_t(0), std::size_t(7), std::size_t(17), std::size_t(29)}) {
    LpSolution sol = engine.solve_moment(p.centers[l]);
    REQUIRE(sol.status == LpStatus::Optimal);
    REQUIRE(sol.support.size() == 1);
    CHECK(sol.support[0].first == l);
    CHECK(sol.support[0].second == doctest::Approx(1.0 / p.du).epsilon(1e-9));
  }
}

TEST_CASE("moment equality constraint honored") {
  PhaseGrid p = build_phase_grid({{0.3, 1.8}, {0.3, 1.3}}, {12, 12});
  LpEngine engine(p, isentropic_euler(1.0, 1.5).entropies.front(), 1.0);
  State m{1.1, 0.8};
  LpSolution sol = engine.solve_moment(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  State mean = measure_mean(sol.support, p);
  CHECK(mean[0] == doctest::Approx(m[0]).epsilon(1e-9));
  CHECK(mean[1] == doctest::Approx(m[1]).epsilon(1e-9));
  double mass = 0.0;
  for (auto& [l, w] : sol.support) {
    mass += w * p.du;
    CHECK(w >= 0.0);
    CHECK(w <= 1.0 / p.du + 1e-9);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hull projection tolerance") {
  PhaseGrid p = build_phase_grid({{-1.0, 1.0}}, {10});
  LpEngine engine(p, quadratic_entropy(), 1.0);
  double hi = p.axis_center(0, 9);
  // within 1e-7 outside: projected onto the hull and solved
  LpSolution near = engine.solve_moment({hi + 5e-8, 0.0});
  CHECK(near.status == LpStatus::Optimal);
  // far outside: surfaces as infeasible with a violated row
  LpSolution far = engine.solve_moment({hi + 0.5, 0.0});
  CHECK(far.status == LpStatus::Infeasible);
  CHECK(far.farkas_row >= 0);
}

TEST_CASE("warm start resolves in zero iterations") {
  PhaseGrid p = build_phase_grid({{-1.5, 1.5}}, {60});
  LpEngine engine(p, quadratic_entropy(), 1.0);
  LpSolution a = engine.solve_moment({0.4, 0.0});
  REQUIRE(a.status == LpStatus::Optimal);
  REQUIRE(a.basis.valid);
  LpSolution b = engine.solve_moment({0.4, 0.0}, &a.basis);
  CHECK(b.status == LpStatus::Optimal);
  CHECK(b.iterations == 0);
  REQUIRE(b.support.size() == a.support.size());
  for (std::size_t k = 0; k < a.support.size(); ++k) {
    CHECK(b.support[k].first == a.support[k].first);
    CHECK(b.support[k].second == doctest::Approx(a.support[k].second));
  }
  // warm start from a neighbouring moment still lands on the optimum
  LpSolution c = engine.solve_moment({0.45, 0.0}, &a.basis);
  LpSolution cold = engine.solve_moment({0.45, 0.0});
  CHECK(c.status == LpStatus::Optimal);
  CHECK(c.objective == doctest::Approx(cold.objective).epsilon(1e-10));
  CHECK(c.iterations <= cold.iterations);
}

TEST_CASE("objective scaling restores the dropped factors") {
  PhaseGrid p = build_phase_grid({{-1.0, 1.0}}, {8});
  double dxi = 0.2, p0 = 0.5;
  LpInstance inst = assemble_lp({0.25, 0.0}, p, quadratic_entropy(), 1.0, dxi, p0);
  LpSolution sol = solve(inst);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective_scaled ==
        doctest::Approx(sol.objective * dxi * p.du * p0).epsilon(1e-12));
}

TEST_CASE("simplex matches exhaustive vertex enumeration") {
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    bool system = t % 3 == 0;
    double lf = (t % 4 == 0) ? 0.5 : 1.0;
    PhaseGrid p;
    EntropySpec ent;
    State m{};
    if (system) {
      int n1 = 2 + int(unit(rng) * 2.0), n2 = 2 + int(unit(rng) * 2.0);
      p = build_phase_grid({{0.5, 1.5}, {-1.0, 1.0}}, {n1, n2});
      ent = isentropic_euler(1.0, 1.5).entropies.front();
      m = {0.6 + 0.8 * unit(rng), -0.8 + 1.6 * unit(rng)};
    } else {
      int nu = 4 + int(unit(rng) * 9.0);
      p = build_phase_grid({{-1.0, 1.0}}, {nu});
      ent = (t % 2 == 0) ? quadratic_entropy() : kruzhkov_entropy(0.25);
      m = {-0.9 + 1.8 * unit(rng), 0.0};
    }
    if (lf * double(p.size()) < 1.0) continue;
    auto oracle = testing::enumerate_lp(p, ent, m, lf);
    LpInstance inst = assemble_lp(m, p, ent, lf);
    LpSolution sol = solve(inst);
    REQUIRE(oracle.feasible == (sol.status == LpStatus::Optimal));
    if (oracle.feasible) {
      CHECK(sol.objective == doctest::Approx(oracle.objective).epsilon(1e-8));
      ++solved;
    }
  }
  CHECK(solved > 30);
}

TEST_CASE("solve is deterministic") {
  PhaseGrid p = build_phase_grid({{-1.5, 1.5}}, {100});
  LpEngine engine(p, quadratic_entropy(), 0.05);
  LpSolution a = engine.solve_moment({0.33, 0.0});
  LpSolution b = engine.solve_moment({0.33, 0.0});
  REQUIRE(a.support.size() == b.support.size());
  for (std::size_t k = 0; k < a.support.size(); ++k) {
    CHECK(a.support[k].first == b.support[k].first);
    CHECK(a.support[k].second == b.support[k].second);
  }
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("capped weights spread the support") {
  PhaseGrid p = build_phase_grid({{-2.0, 2.0}}, {100});
  LpEngine engine(p, quadratic_entropy(), 0.05);
  LpSolution sol = engine.solve_moment({0.7, 0.0});
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.support.size() >= 20);  // needs 1/lambda_F cells at the cap
  for (auto& [l, w] : sol.support) CHECK(w <= 0.05 / p.du + 1e-12);
}
