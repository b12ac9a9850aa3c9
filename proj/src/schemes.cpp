#include "ym/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ym/parallel.hpp"

namespace ym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ghost_count(int order) { return order == 5 ? 5 : (order == 2 ? 2 : 1); }

State clamp_to_hull(State u, const PhaseGrid& phase) {
  for (int k = 0; k < phase.ncomp; ++k) {
    double lo = phase.axis_center(k, 0);
    double hi = phase.axis_center(k, phase.count[k] - 1);
    u[k] = std::clamp(u[k], lo, hi);
  }
  return u;
}

}  // namespace

void SchemeConfig::validate() const {
  if (order != 1 && order != 2 && order != 5) throw ConfigError("scheme order must be 1, 2 or 5");
  if (!(cfl > 0.0) || cfl >= 1.0) throw ConfigError("CFL number must lie in (0, 1)");
  if (theta < 1.0 || theta > 2.0) throw ConfigError("theta must lie in [1, 2]");
  if (workers < 1) throw ConfigError("worker count must be >= 1");
}

double local_speed(const State& ul, const State& ur, const ProblemDef& problem, double x) {
  State ll = problem.eigenvalues(ul, x);
  State lr = problem.eigenvalues(ur, x);
  int n = problem.ncomp;
  return std::max(std::max(std::abs(ll[0]), std::abs(ll[n - 1])),
                  std::max(std::abs(lr[0]), std::abs(lr[n - 1])));
}

State llf_flux(const State& ul, const State& ur, double a, const ProblemDef& problem, double x) {
  State fl = problem.flux(ul, x);
  State fr = problem.flux(ur, x);
  State out{};
  for (int k = 0; k < problem.ncomp; ++k)
    out[k] = 0.5 * (fl[k] + fr[k]) - 0.5 * a * (ur[k] - ul[k]);
  return out;
}

void aweno_correction(const std::array<State, 5>& f, double dx, int ncomp, State* fxx,
                      State* fxxxx) {
  double dx2 = dx * dx, dx4 = dx2 * dx2;
  for (int k = 0; k < ncomp; ++k) {
    (*fxx)[k] = (-f[0][k] + 16.0 * f[1][k] - 30.0 * f[2][k] + 16.0 * f[3][k] - f[4][k]) /
                (12.0 * dx2);
    (*fxxxx)[k] = (f[0][k] - 4.0 * f[1][k] + 6.0 * f[2][k] - 4.0 * f[3][k] + f[4][k]) / dx4;
  }
}

void aweno_correction_legacy(const std::array<State, 6>& f, double dx, int ncomp, State* fxx,
                             State* fxxxx) {
  double dx2 = dx * dx, dx4 = dx2 * dx2;
  for (int k = 0; k < ncomp; ++k) {
    (*fxx)[k] = (-5.0 * f[0][k] + 39.0 * f[1][k] - 34.0 * f[2][k] - 34.0 * f[3][k] +
                 39.0 * f[4][k] - 5.0 * f[5][k]) /
                (48.0 * dx2);
    (*fxxxx)[k] = (f[0][k] - 3.0 * f[1][k] + 2.0 * f[2][k] + 2.0 * f[3][k] - 3.0 * f[4][k] +
                   f[5][k]) /
                  (2.0 * dx4);
  }
}

AuditResult conservation_audit(const MomentField& before, const MomentField& after, double dt,
                               double dx, std::span<const State> flux_left,
                               std::span<const State> flux_right, int ncomp) {
  AuditResult res;
  for (int i = 0; i < before.nxi; ++i) {
    for (int k = 0; k < ncomp; ++k) {
      double total = 0.0, norm = 0.0;
      for (int j = 0; j < before.nx; ++j) {
        total += (after.at(i, j)[k] - before.at(i, j)[k]) * dx;
        norm += std::abs(after.at(i, j)[k]) * dx;
      }
      double r = std::abs(total + dt * (flux_right[i][k] - flux_left[i][k]));
      res.max_abs = std::max(res.max_abs, r);
      res.max_rel = std::max(res.max_rel, r / std::max(norm, 1e-14));
    }
  }
  return res;
}

SchemeContext::SchemeContext(const ProblemDef& problem, const SpatialGrid& spatial,
                             const StochasticGrid& stochastic, const PhaseGrid& phase,
                             const SchemeConfig& config, const EntropySpec& entropy,
                             double lambda_f)
    : problem_(&problem),
      spatial_(&spatial),
      stochastic_(&stochastic),
      phase_(&phase),
      config_(config),
      engine_(phase, entropy, lambda_f, stochastic.dxi, stochastic.p0) {
  config_.validate();
  if (phase.ncomp != problem.ncomp) throw ConfigError("phase grid component count mismatch");
  std::size_t cells = std::size_t(stochastic.nxi) * spatial.nx;
  warm_cell_.resize(cells);
  int nq = spatial.nx + 1 + (config_.order == 5 ? 4 : 0);
  warm_iface_.resize(std::size_t(stochastic.nxi) * nq * 2);
}

LpSolution SchemeContext::solve_cell(int i, int j, const State& moment) const {
  std::size_t slot = std::size_t(i) * spatial_->nx + j;
  LpBasis* warm = &warm_cell_[slot];
  LpSolution sol = engine_.solve_moment(moment, warm);
  if (sol.status != LpStatus::Optimal) {
    std::string what = sol.status == LpStatus::Infeasible
                           ? "reconstruction LP infeasible (violated row " +
                                 std::to_string(sol.farkas_row) + ")"
                           : "reconstruction LP hit its iteration limit";
    throw LpError(what + " at i=" + std::to_string(i) + " j=" + std::to_string(j));
  }
  *warm = sol.basis;
  return sol;
}

std::vector<State> SchemeContext::extend_row(const MomentField& field, int i, int ghosts) const {
  int nx = field.nx;
  std::vector<State> ext(std::size_t(nx) + 2 * ghosts);
  for (int j = 0; j < nx; ++j) ext[ghosts + j] = field.at(i, j);
  for (int g = 0; g < ghosts; ++g) {
    if (config_.bc == Boundary::Periodic) {
      ext[ghosts - 1 - g] = field.at(i, (nx - 1 - g % nx + nx) % nx);
      ext[ghosts + nx + g] = field.at(i, g % nx);
    } else {
      ext[ghosts - 1 - g] = field.at(i, 0);
      ext[ghosts + nx + g] = field.at(i, nx - 1);
    }
  }
  return ext;
}

RhsOutput SchemeContext::rhs(const MomentField& moments) const {
  const int order = config_.order;
  if (order != 2 && order != 5)
    throw std::logic_error("rhs: semi-discrete form only for orders 2 and 5");
  const int nxi = moments.nxi, nx = moments.nx;
  const double dx = spatial_->dx;
  const int G = ghost_count(order);
  const int q0 = order == 5 ? -2 : 0;
  const int q1 = order == 5 ? nx + 2 : nx;
  const int nq = q1 - q0 + 1;
  const bool variant_a = config_.flux_variant == FluxVariant::ReconstructThenAverage;
  const bool legacy_corr = config_.correction_variant == CorrectionVariant::PointValue;
  const bool need_cells = ym() && (variant_a || (order == 5 && legacy_corr));

  RhsOutput out;
  out.dudt = MomentField(nxi, nx);
  out.flux_left.resize(nxi);
  out.flux_right.resize(nxi);

  std::vector<LpSolution> cellsol;
  MomentField star(nxi, nx);
  if (need_cells) {
    cellsol.resize(std::size_t(nxi) * nx);
    parallel_for(std::size_t(nxi) * nx, config_.workers, [&](std::size_t k) {
      int i = int(k / nx), j = int(k % nx);
      cellsol[k] = solve_cell(i, j, moments.at(i, j));
      star.at(i, j) = measure_mean(cellsol[k].support, *phase_);
    });
    for (const auto& s : cellsol) out.lp_iterations += s.iterations;
  }

  // CFL speed estimate (informational; the driver calls cfl_dt once per step).
  {
    double s = 0.0;
    if (ym() && variant_a) {
      for (int j = 0; j < nx; ++j) {
        double avg = 0.0;
        for (int i = 0; i < nxi; ++i)
          avg += measure_speed_average(cellsol[std::size_t(i) * nx + j].support, *phase_,
                                       *problem_, spatial_->center(j));
        s = std::max(s, avg / nxi);
      }
    } else {
      for (int i = 0; i < nxi; ++i)
        for (int j = 0; j < nx; ++j)
          s = std::max(s, problem_->max_wave_speed(moments.at(i, j), spatial_->center(j)));
    }
    out.max_dt = s > 1e-14 ? config_.cfl * dx / s : kInf;
  }

  const MomentField& source = (ym() && variant_a) ? star : moments;
  std::vector<long> row_iters(nxi, 0);

  parallel_for(std::size_t(nxi), config_.workers, [&](std::size_t iw) {
    int i = int(iw);
    std::vector<State> ext = extend_row(source, i, G);
    std::vector<State> flux(nq);
    for (int q = q0; q <= q1; ++q) {
      double x_if = spatial_->x_min + q * dx;
      const State& cl = ext[G + q - 1];
      const State& cr = ext[G + q];
      std::optional<LcdPair> lcd;
      if (problem_->lcd_factory) lcd = problem_->lcd_factory(cl, cr);
      InterfaceStates rec;
      if (order == 2) {
        rec = linear_reconstruct({ext[G + q - 2], cl, cr, ext[G + q + 1]}, problem_->ncomp,
                                 config_.theta, lcd);
      } else {
        rec = wenoz_reconstruct_system(
            {ext[G + q - 3], ext[G + q - 2], cl, cr, ext[G + q + 1], ext[G + q + 2]},
            problem_->ncomp, lcd);
      }
      double a = local_speed(rec.minus, rec.plus, *problem_, x_if);
      if (ym() && !variant_a) {
        // One LP per one-sided value; reconstructed states may graze the
        // hull boundary, clamp before assembling.
        State sided[2] = {clamp_to_hull(rec.minus, *phase_), clamp_to_hull(rec.plus, *phase_)};
        State fbar[2], ubar[2];
        for (int side = 0; side < 2; ++side) {
          std::size_t slot = (std::size_t(i) * nq + (q - q0)) * 2 + side;
          LpBasis* warm = &warm_iface_[slot];
          LpSolution sol = engine_.solve_moment(sided[side], warm);
          if (sol.status != LpStatus::Optimal)
            throw LpError("interface LP failed at i=" + std::to_string(i) +
                          " interface=" + std::to_string(q));
          *warm = sol.basis;
          row_iters[i] += sol.iterations;
          fbar[side] = measure_flux_average(sol.support, *phase_, *problem_, x_if);
          ubar[side] = measure_mean(sol.support, *phase_);
        }
        for (int k = 0; k < problem_->ncomp; ++k)
          flux[q - q0][k] = 0.5 * (fbar[0][k] + fbar[1][k]) - 0.5 * a * (ubar[1][k] - ubar[0][k]);
      } else {
        flux[q - q0] = llf_flux(rec.minus, rec.plus, a, *problem_, x_if);
      }
    }

    std::vector<State> h(nx + 1);
    if (order == 2) {
      for (int q = 0; q <= nx; ++q) h[q] = flux[q - q0];
    } else {
      std::vector<State> pf;  // point fluxes for the legacy correction
      if (legacy_corr) {
        pf.resize(std::size_t(nx) + 2 * G);
        for (int c = -3; c < nx + 3; ++c) {
          double xc = spatial_->x_min + (c + 0.5) * dx;
          if (ym()) {
            int jc = config_.bc == Boundary::Periodic ? (c % nx + nx) % nx
                                                      : std::clamp(c, 0, nx - 1);
            pf[G + c] =
                measure_flux_average(cellsol[std::size_t(i) * nx + jc].support, *phase_,
                                     *problem_, xc);
          } else {
            pf[G + c] = problem_->flux(ext[G + c], xc);
          }
        }
      }
      for (int q = 0; q <= nx; ++q) {
        State fxx{}, fxxxx{};
        if (legacy_corr) {
          aweno_correction_legacy({pf[G + q - 3], pf[G + q - 2], pf[G + q - 1], pf[G + q],
                                   pf[G + q + 1], pf[G + q + 2]},
                                  dx, problem_->ncomp, &fxx, &fxxxx);
        } else {
          aweno_correction({flux[q - 2 - q0], flux[q - 1 - q0], flux[q - q0], flux[q + 1 - q0],
                            flux[q + 2 - q0]},
                           dx, problem_->ncomp, &fxx, &fxxxx);
        }
        for (int k = 0; k < problem_->ncomp; ++k)
          h[q][k] = flux[q - q0][k] - dx * dx / 24.0 * fxx[k] +
                    7.0 * dx * dx * dx * dx / 5760.0 * fxxxx[k];
      }
    }

    out.flux_left[i] = h[0];
    out.flux_right[i] = h[nx];
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < problem_->ncomp; ++k)
        out.dudt.at(i, j)[k] = -(h[j + 1][k] - h[j][k]) / dx;
  });

  for (long it : row_iters) out.lp_iterations += it;
  return out;
}

MomentField SchemeContext::first_order_step(const MomentField& moments, double dt,
                                            std::vector<State>* flux_left,
                                            std::vector<State>* flux_right,
                                            long* lp_iterations) const {
  const int nxi = moments.nxi, nx = moments.nx;
  const double dx = spatial_->dx;

  std::vector<LpSolution> cellsol;
  if (ym()) {
    cellsol.resize(std::size_t(nxi) * nx);
    parallel_for(std::size_t(nxi) * nx, config_.workers, [&](std::size_t k) {
      int i = int(k / nx), j = int(k % nx);
      cellsol[k] = solve_cell(i, j, moments.at(i, j));
    });
    if (lp_iterations)
      for (const auto& s : cellsol) *lp_iterations += s.iterations;
  }

  MomentField next(nxi, nx);
  if (flux_left) flux_left->resize(nxi);
  if (flux_right) flux_right->resize(nxi);

  for (int i = 0; i < nxi; ++i) {
    std::vector<State> ext = extend_row(moments, i, 1);
    std::vector<State> f(std::size_t(nx) + 2);
    for (int c = -1; c <= nx; ++c) {
      double xc = spatial_->x_min + (c + 0.5) * dx;
      if (ym()) {
        int jc = config_.bc == Boundary::Periodic ? (c % nx + nx) % nx : std::clamp(c, 0, nx - 1);
        f[c + 1] = measure_flux_average(cellsol[std::size_t(i) * nx + jc].support, *phase_,
                                        *problem_, xc);
      } else {
        f[c + 1] = problem_->flux(ext[1 + c], xc);
      }
    }
    for (int j = 0; j < nx; ++j)
      for (int k = 0; k < problem_->ncomp; ++k)
        next.at(i, j)[k] = 0.5 * (ext[1 + j + 1][k] + ext[1 + j - 1][k]) -
                           dt / (2.0 * dx) * (f[j + 2][k] - f[j][k]);
    // Equivalent conservative-form boundary fluxes for the audit.
    if (flux_left || flux_right) {
      auto h_at = [&](int q) {
        State h{};
        for (int k = 0; k < problem_->ncomp; ++k)
          h[k] = 0.5 * (f[q][k] + f[q + 1][k]) -
                 dx / (2.0 * dt) * (ext[1 + q][k] - ext[q][k]);
        return h;
      };
      if (flux_left) (*flux_left)[i] = h_at(0);
      if (flux_right) (*flux_right)[i] = h_at(nx);
    }
  }
  return next;
}

double SchemeContext::cfl_dt(const MomentField& moments, double remaining) const {
  const int nxi = moments.nxi, nx = moments.nx;
  double s = 0.0;
  if (ym()) {
    std::vector<LpSolution> cellsol(std::size_t(nxi) * nx);
    parallel_for(std::size_t(nxi) * nx, config_.workers, [&](std::size_t k) {
      int i = int(k / nx), j = int(k % nx);
      cellsol[k] = solve_cell(i, j, moments.at(i, j));
    });
    for (int j = 0; j < nx; ++j) {
      double avg = 0.0;
      for (int i = 0; i < nxi; ++i)
        avg += measure_speed_average(cellsol[std::size_t(i) * nx + j].support, *phase_, *problem_,
                                     spatial_->center(j));
      s = std::max(s, avg / nxi);
    }
  } else {
    for (int i = 0; i < nxi; ++i)
      for (int j = 0; j < nx; ++j)
        s = std::max(s, problem_->max_wave_speed(moments.at(i, j), spatial_->center(j)));
  }
  if (s <= 1e-14) return remaining;
  return std::min(config_.cfl * spatial_->dx / s, remaining);
}

std::vector<LpSolution> SchemeContext::reconstruct_measures(const MomentField& moments) const {
  std::vector<LpSolution> sols(std::size_t(moments.nxi) * moments.nx);
  parallel_for(sols.size(), config_.workers, [&](std::size_t k) {
    int i = int(k / moments.nx), j = int(k % moments.nx);
    sols[k] = solve_cell(i, j, moments.at(i, j));
  });
  return sols;
}

}  // namespace ym
