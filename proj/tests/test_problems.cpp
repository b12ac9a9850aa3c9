#include <cmath>

#include "doctest.h"
#include "ym/problems.hpp"
#include "ym/state.hpp"

using namespace ym;

TEST_CASE("burgers flux, speeds, entropies") {
  ProblemDef p = burgers();
  CHECK(p.ncomp == 1);
  CHECK(p.flux({0.6, 0.0}, 0.0)[0] == doctest::Approx(0.18));
  CHECK(p.eigenvalues({-0.4, 0.0}, 0.0)[0] == doctest::Approx(-0.4));
  CHECK(p.max_wave_speed({-0.4, 0.0}, 0.0) == doctest::Approx(0.4));
  CHECK(p.entropies.front().evaluate({0.6, 0.0}) == doctest::Approx(0.18));
  CHECK_FALSE(p.x_dependent_flux);
}

TEST_CASE("kruzhkov entropy kink") {
  EntropySpec e = kruzhkov_entropy(0.5);
  CHECK(e.evaluate({0.5, 0.0}) == doctest::Approx(0.0));
  CHECK(e.evaluate({0.8, 0.0}) == doctest::Approx(0.3));
  CHECK(e.evaluate({0.1, 0.0}) == doctest::Approx(0.4));
}

TEST_CASE("isentropic euler flux and eigenvalues") {
  double kappa = 1.0, gamma = 1.5;
  ProblemDef p = isentropic_euler(kappa, gamma);
  State u{1.44, 0.72};  // rho, q; v = 0.5
  State f = p.flux(u, 0.0);
  CHECK(f[0] == doctest::Approx(0.72));
  CHECK(f[1] == doctest::Approx(0.72 * 0.5 + kappa * std::pow(1.44, gamma)));
  State lam = p.eigenvalues(u, 0.0);
  double c = std::sqrt(kappa * gamma) * std::pow(1.44, 0.5 * (gamma - 1.0));
  CHECK(lam[0] == doctest::Approx(0.5 - c));
  CHECK(lam[1] == doctest::Approx(0.5 + c));
  CHECK(lam[0] < lam[1]);
}

TEST_CASE("euler LCD matrices invert each other and capture the Jacobian") {
  double kappa = 1.0, gamma = 1.5;
  State ul{1.2, 0.6}, ur{0.9, 0.5};
  auto lcd = euler_lcd_matrices(ul, ur, kappa, gamma);
  REQUIRE(lcd.has_value());
  Mat2 prod = matmul(lcd->first, lcd->second);
  CHECK(prod[0][0] == doctest::Approx(1.0));
  CHECK(prod[0][1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(prod[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(prod[1][1] == doctest::Approx(1.0));

  // R diagonalizes the averaged Jacobian: columns are eigenvectors.
  double rho = 0.5 * (ul[0] + ur[0]);
  double v = 0.5 * (ul[1] / ul[0] + ur[1] / ur[0]);
  double c = std::sqrt(kappa * gamma) * std::pow(rho, 0.5 * (gamma - 1.0));
  // Jacobian of (q, q^2/rho + kappa rho^gamma): [[0,1],[c^2-v^2, 2v]]
  Mat2 jac{{{0.0, 1.0}, {c * c - v * v, 2.0 * v}}};
  Mat2 lambda = matmul(lcd->second, matmul(jac, lcd->first));
  CHECK(lambda[0][1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(lambda[1][0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(lambda[0][0] == doctest::Approx(v - c));
  CHECK(lambda[1][1] == doctest::Approx(v + c));
}

TEST_CASE("euler LCD degenerates near sonic averages") {
  // rho = 1 gives c = sqrt(1.5); pick v = c so v - c = 0.
  double c = std::sqrt(1.5);
  State u{1.0, c};
  CHECK_FALSE(euler_lcd_matrices(u, u, 1.0, 1.5).has_value());
}

TEST_CASE("discontinuous flux switches at x = 0 with H(0) = 1") {
  ProblemDef p = discontinuous_flux('A');
  CHECK(p.x_dependent_flux);
  double u = 0.4;
  double g = u * (1.0 - u), f = 1.1 * u * (1.0 - u);
  CHECK(p.flux({u, 0.0}, -0.5)[0] == doctest::Approx(g));
  CHECK(p.flux({u, 0.0}, 0.5)[0] == doctest::Approx(f));
  CHECK(p.flux({u, 0.0}, 0.0)[0] == doctest::Approx(f));  // H(0) = 1

  // central-difference eigenvalue close to the analytic derivative
  CHECK(p.eigenvalues({u, 0.0}, 0.5)[0] == doctest::Approx(1.1 * (1.0 - 2.0 * u)).epsilon(1e-6));
  CHECK(p.eigenvalues({u, 0.0}, -0.5)[0] == doctest::Approx(1.0 - 2.0 * u).epsilon(1e-6));
  CHECK_FALSE(bool(p.lcd_factory));

  ProblemDef q = discontinuous_flux('B');
  CHECK(q.flux({u, 0.0}, 1.0)[0] == doctest::Approx(2.0 * u * (1.0 - u) / (2.0 - u)));
  CHECK(q.flux({u, 0.0}, -1.0)[0] == doctest::Approx(2.0 * u * (1.0 - u) / (1.0 + u)));
}

TEST_CASE("pressureless gas has a double eigenvalue at v") {
  ProblemDef p = pressureless_gas();
  State u{2.0, 3.0};
  State f = p.flux(u, 0.0);
  CHECK(f[0] == doctest::Approx(3.0));
  CHECK(f[1] == doctest::Approx(4.5));
  State lam = p.eigenvalues(u, 0.0);
  CHECK(lam[0] == doctest::Approx(1.5));
  CHECK(lam[1] == doctest::Approx(1.5));
  CHECK_FALSE(bool(p.lcd_factory));
}

TEST_CASE("problem catalogue and suggestions") {
  CHECK(make_problem("burgers", 1, 1.5).id == "burgers");
  CHECK(make_problem("pressureless", 1, 1.5).ncomp == 2);
  CHECK_THROWS_WITH_AS(make_problem("burger", 1, 1.5),
                       doctest::Contains("known: burgers"), ConfigError);
}

TEST_CASE("initial data catalogue") {
  auto ex1 = initial_data("1");
  CHECK(ex1(0.25, 0.8)[0] == doctest::Approx(0.8));
  CHECK(ex1(0.75, 0.8)[0] == doctest::Approx(-0.8));

  auto ex2 = initial_data("example2");
  State left = ex2(-0.5, 0.3);
  CHECK(left[0] == doctest::Approx(1.0));
  CHECK(left[1] == doctest::Approx(1.0));
  // xi = 0 keeps the left state on the right too (curve through u_L)
  State right0 = ex2(0.5, 0.0);
  CHECK(right0[0] == doctest::Approx(1.0));
  CHECK(right0[1] == doctest::Approx(1.0));
  State right = ex2(0.5, 0.6);
  CHECK(right[0] == doctest::Approx(1.3));
  CHECK(right[1] / right[0] < 1.0);  // 1-wave: v decreases as rho grows

  auto ex6 = initial_data("6");
  CHECK(ex6(-0.7, 0.0)[1] == doctest::Approx(2.0));
  CHECK(ex6(0.0, 0.0)[1] == doctest::Approx(0.0));

  auto ex7 = initial_data("7");
  CHECK(ex7(0.0, 0.0)[0] == doctest::Approx(1.5));
  CHECK(ex7(0.9, 0.0)[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(initial_data("99"), ConfigError);
}
