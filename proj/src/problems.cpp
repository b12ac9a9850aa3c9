#include "ym/problems.hpp"

#include <cmath>

namespace ym {

namespace {

constexpr double kPi = 3.14159265358979323846;

double require_density(double rho) {
  if (rho <= kDensityFloor) throw PositivityError("density at or below floor");
  return rho;
}

// H(0) = 1; grids keep cell centers off the origin so the choice is
// immaterial.
double heaviside(double x) { return x < 0.0 ? 0.0 : 1.0; }

}  // namespace

const EntropySpec& ProblemDef::entropy(const std::string& name) const {
  for (const auto& e : entropies)
    if (e.name == name) return e;
  throw ConfigError("problem '" + id + "' has no entropy '" + name + "'");
}

EntropySpec quadratic_entropy() {
  EntropySpec e;
  e.tag = EntropyTag::Quadratic;
  e.name = "quadratic";
  e.evaluate = [](const State& u) { return 0.5 * u[0] * u[0]; };
  return e;
}

EntropySpec kruzhkov_entropy(double c) {
  EntropySpec e;
  e.tag = EntropyTag::Kruzhkov;
  e.kruzhkov_c = c;
  e.name = "kruzhkov";
  e.evaluate = [c](const State& u) { return std::abs(u[0] - c); };
  return e;
}

ProblemDef burgers() {
  ProblemDef p;
  p.id = "burgers";
  p.ncomp = 1;
  p.flux = [](const State& u, double) -> State { return {0.5 * u[0] * u[0], 0.0}; };
  p.eigenvalues = [](const State& u, double) -> State { return {u[0], 0.0}; };
  p.entropies = {quadratic_entropy()};
  p.default_phase_box = {{-1.5, 1.5}};
  return p;
}

ProblemDef isentropic_euler(double kappa, double gamma) {
  if (!(kappa > 0.0) || !(gamma > 1.0))
    throw ConfigError("isentropic euler: need kappa > 0 and gamma > 1");
  ProblemDef p;
  p.id = "euler";
  p.ncomp = 2;
  p.flux = [kappa, gamma](const State& u, double) -> State {
    double rho = require_density(u[0]);
    double q = u[1];
    return {q, q * q / rho + kappa * std::pow(rho, gamma)};
  };
  p.eigenvalues = [kappa, gamma](const State& u, double) -> State {
    double rho = require_density(u[0]);
    double v = u[1] / rho;
    double c = std::sqrt(kappa * gamma) * std::pow(rho, 0.5 * (gamma - 1.0));
    return {v - c, v + c};
  };
  p.lcd_factory = [kappa, gamma](const State& ul, const State& ur) {
    return euler_lcd_matrices(ul, ur, kappa, gamma);
  };
  EntropySpec e;
  e.tag = EntropyTag::Euler;
  e.name = "euler";
  e.evaluate = [kappa, gamma](const State& u) {
    double rho = require_density(u[0]);
    double v = u[1] / rho;
    return 0.5 * rho * v * v + kappa * std::pow(rho, gamma) / (gamma - 1.0);
  };
  p.entropies = {e};
  p.default_phase_box = {{0.3, 1.8}, {0.3, 1.3}};
  return p;
}

std::optional<LcdPair> euler_lcd_matrices(const State& ul, const State& ur, double kappa,
                                          double gamma) {
  double rho_hat = 0.5 * (ul[0] + ur[0]);
  if (rho_hat <= kDensityFloor) throw PositivityError("lcd average density at or below floor");
  double vl = ul[1] / require_density(ul[0]);
  double vr = ur[1] / require_density(ur[0]);
  double v_hat = 0.5 * (vl + vr);
  double c = std::sqrt(kappa * gamma) * std::pow(rho_hat, 0.5 * (gamma - 1.0));
  if (std::abs(v_hat - c) < 1e-10 || std::abs(v_hat + c) < 1e-10) return std::nullopt;
  Mat2 r{{{1.0 / (v_hat - c), 1.0 / (v_hat + c)}, {1.0, 1.0}}};
  // Closed-form inverse; det R = 2c / (v^2 - c^2).
  double f = (v_hat * v_hat - c * c) / (2.0 * c);
  Mat2 rinv{{{f, -f / (v_hat + c)}, {-f, f / (v_hat - c)}}};
  return LcdPair{r, rinv};
}

ProblemDef discontinuous_flux(char variant) {
  ProblemDef p;
  p.ncomp = 1;
  p.x_dependent_flux = true;
  std::function<double(double)> g, f;
  if (variant == 'A' || variant == 'a') {
    p.id = "discflux-a";
    g = [](double u) { return u * (1.0 - u); };
    f = [](double u) { return 1.1 * u * (1.0 - u); };
  } else if (variant == 'B' || variant == 'b') {
    p.id = "discflux-b";
    g = [](double u) { return 2.0 * u * (1.0 - u) / (1.0 + u); };
    f = [](double u) { return 2.0 * u * (1.0 - u) / (2.0 - u); };
  } else {
    throw ConfigError("discontinuous flux: variant must be A or B");
  }
  p.flux = [g, f](const State& u, double x) -> State {
    double h = heaviside(x);
    return {(1.0 - h) * g(u[0]) + h * f(u[0]), 0.0};
  };
  // Derivative by central difference; both branches are smooth rational
  // functions so the error is negligible at h = 1e-7.
  p.eigenvalues = [g, f](const State& u, double x) -> State {
    double h = heaviside(x);
    auto fl = [&](double v) { return (1.0 - h) * g(v) + h * f(v); };
    double eps = 1e-7;
    return {(fl(u[0] + eps) - fl(u[0] - eps)) / (2.0 * eps), 0.0};
  };
  p.entropies = {quadratic_entropy(), kruzhkov_entropy(0.5)};
  p.default_phase_box = {{-1.0, 1.0}};
  return p;
}

ProblemDef pressureless_gas() {
  ProblemDef p;
  p.id = "pressureless";
  p.ncomp = 2;
  p.flux = [](const State& u, double) -> State {
    double rho = require_density(u[0]);
    return {u[1], u[1] * u[1] / rho};
  };
  p.eigenvalues = [](const State& u, double) -> State {
    double v = u[1] / require_density(u[0]);
    return {v, v};
  };
  // Weakly hyperbolic: the Jacobian is defective, so there is no eigenvector
  // basis and reconstruction stays component-wise.
  EntropySpec e;
  e.tag = EntropyTag::Kinetic;
  e.name = "kinetic";
  e.evaluate = [](const State& u) { return 0.5 * u[1] * u[1] / require_density(u[0]); };
  p.entropies = {e};
  p.default_phase_box = {{0.2, 20.0}, {-0.3, 20.0}};
  return p;
}

ProblemDef make_problem(const std::string& id, double kappa, double gamma) {
  if (id == "burgers") return burgers();
  if (id == "euler") return isentropic_euler(kappa, gamma);
  if (id == "discflux-a") return discontinuous_flux('A');
  if (id == "discflux-b") return discontinuous_flux('B');
  if (id == "pressureless") return pressureless_gas();
  throw ConfigError("unknown problem id '" + id +
                    "' (known: burgers, euler, discflux-a, discflux-b, pressureless)");
}

std::function<State(double x, double xi)> initial_data(const std::string& example_id) {
  std::string id = example_id;
  if (id.rfind("example", 0) == 0) id = id.substr(7);
  if (id == "1") {
    return [](double x, double xi) -> State { return {xi * std::sin(2.0 * kPi * x), 0.0}; };
  }
  if (id == "2") {
    // Right state connected to u_L = (1,1) along the 1-wave curve, with the
    // density perturbed by xi/2. Isothermal-style integral of c/rho with
    // kappa = 1, gamma = 1.5.
    double gamma = 1.5, kappa = 1.0;
    return [gamma, kappa](double x, double xi) -> State {
      State ul{1.0, 1.0};
      if (x < 0.0) return ul;
      double rho = 1.0 + 0.5 * xi;
      double coef = 2.0 * std::sqrt(kappa * gamma) / (gamma - 1.0);
      double vl = ul[1] / ul[0];
      double v = vl - coef * (std::pow(rho, 0.5 * (gamma - 1.0)) -
                              std::pow(ul[0], 0.5 * (gamma - 1.0)));
      return {rho, rho * v};
    };
  }
  if (id == "3") {
    return [](double x, double xi) -> State {
      if (x < -0.3) return {0.4 + 0.1 * xi, 1.2};
      return {0.4, 1.0};
    };
  }
  if (id == "4") {
    return [](double x, double) -> State { return {x < 0.0 ? 0.65 : 0.35, 0.0}; };
  }
  if (id == "5") {
    return [](double, double) -> State { return {0.5, 0.0}; };
  }
  if (id == "6") {
    return [](double x, double) -> State {
      if (x < -0.5) return {1.0, 2.0};
      return {1.0, 0.0};
    };
  }
  if (id == "7") {
    return [](double x, double) -> State { return {x < 0.5 ? 1.5 : 0.5, 0.0}; };
  }
  if (id == "smooth-burgers") {
    return [](double x, double) -> State { return {0.5 + 0.3 * std::sin(2.0 * kPi * x), 0.0}; };
  }
  throw ConfigError("unknown initial-data id '" + example_id +
                    "' (known: 1..7, smooth-burgers)");
}

}  // namespace ym
