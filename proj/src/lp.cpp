#include "ym/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>

namespace ym {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivTol = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Explicit inverse of the (m x m) basis matrix, m <= 3, Gauss-Jordan with
// partial pivoting.
bool invert(const double B[3][3], int m, double out[3][3]) {
  double a[3][6];
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      a[r][c] = B[r][c];
      a[r][m + c] = (r == c) ? 1.0 : 0.0;
    }
  }
  for (int k = 0; k < m; ++k) {
    int p = k;
    for (int r = k + 1; r < m; ++r)
      if (std::abs(a[r][k]) > std::abs(a[p][k])) p = r;
    if (std::abs(a[p][k]) < 1e-13) return false;
    if (p != k)
      for (int c = 0; c < 2 * m; ++c) std::swap(a[p][c], a[k][c]);
    double inv = 1.0 / a[k][k];
    for (int c = 0; c < 2 * m; ++c) a[k][c] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == k) continue;
      double f = a[r][k];
      if (f == 0.0) continue;
      for (int c = 0; c < 2 * m; ++c) a[r][c] -= f * a[k][c];
    }
  }
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) out[r][c] = a[r][m + c];
  return true;
}

class Simplex {
 public:
  Simplex(const LpColumns& cols, const std::array<double, 3>& b, double ub)
      : C(cols), m(cols.nrows), N(cols.ncols), ub_(ub), b_(b), pos_(cols.ncols, 0) {}

  LpSolution run(double report_scale, const LpBasis* warm) {
    LpSolution sol;
    bool warmed = false;
    if (warm && warm->valid && warm->nbasic == m) warmed = try_warm(*warm);
    if (!warmed) {
      if (!phase1()) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iterations_;
        sol.farkas_row = farkas_row_;
        return sol;
      }
    }
    sol.status = phase2() ? LpStatus::Optimal : LpStatus::IterationLimit;
    sol.iterations = iterations_;
    collect(sol, report_scale);
    return sol;
  }

 private:
  const LpColumns& C;
  int m;
  std::size_t N;
  double ub_;
  std::array<double, 3> b_;

  std::vector<char> pos_;  // structural: 0 at lower, 1 at upper, 2 basic
  int basic_[3] = {-1, -1, -1};
  double art_sign_[3] = {1, 1, 1};
  double art_ub_[3] = {kInf, kInf, kInf};
  double beff_[3] = {0, 0, 0};
  double binv_[3][3];
  double xb_[3] = {0, 0, 0};
  int iterations_ = 0;
  int farkas_row_ = -1;
  bool in_phase1_ = false;

  bool is_art(int j) const { return j >= int(N); }

  void column(int j, double out[3]) const {
    if (is_art(j)) {
      for (int r = 0; r < m; ++r) out[r] = 0.0;
      out[j - int(N)] = art_sign_[j - int(N)];
    } else {
      const double* a = C.a.data() + std::size_t(j) * m;
      for (int r = 0; r < m; ++r) out[r] = a[r];
    }
  }

  bool factor() {
    double B[3][3];
    double col[3];
    for (int c = 0; c < m; ++c) {
      column(basic_[c], col);
      for (int r = 0; r < m; ++r) B[r][c] = col[r];
    }
    return invert(B, m, binv_);
  }

  void compute_xb() {
    for (int r = 0; r < m; ++r) {
      double s = 0.0;
      for (int c = 0; c < m; ++c) s += binv_[r][c] * beff_[c];
      xb_[r] = s;
    }
  }

  void beff_add(int j, double f) {
    double col[3];
    column(j, col);
    for (int r = 0; r < m; ++r) beff_[r] += f * col[r];
  }

  bool try_warm(const LpBasis& warm) {
    for (int c = 0; c < m; ++c)
      if (warm.basic[c] < 0 || warm.basic[c] >= int(N)) return false;
    std::fill(pos_.begin(), pos_.end(), char(0));
    for (int r = 0; r < m; ++r) beff_[r] = b_[r];
    for (int j : warm.upper) {
      if (j < 0 || j >= int(N)) return false;
      pos_[j] = 1;
      beff_add(j, -ub_);
    }
    for (int c = 0; c < m; ++c) {
      int j = warm.basic[c];
      if (pos_[j] != 0) return false;
      basic_[c] = j;
      pos_[j] = 2;
    }
    if (!factor()) return false;
    compute_xb();
    for (int r = 0; r < m; ++r)
      if (xb_[r] < -kFeasTol || xb_[r] > ub_ + kFeasTol) return false;
    return true;
  }

  // Minimizes the sum of artificial variables from the all-at-lower start.
  bool phase1() {
    std::fill(pos_.begin(), pos_.end(), char(0));
    for (int r = 0; r < m; ++r) {
      beff_[r] = b_[r];
      art_sign_[r] = (b_[r] < 0.0) ? -1.0 : 1.0;
      art_ub_[r] = kInf;
      basic_[r] = int(N) + r;
      xb_[r] = std::abs(b_[r]);
      for (int c = 0; c < m; ++c) binv_[r][c] = 0.0;
      binv_[r][r] = art_sign_[r];
    }
    in_phase1_ = true;
    if (!iterate()) return false;
    double art_total = 0.0;
    int worst = 0;
    double worst_val = -1.0;
    for (int c = 0; c < m; ++c) {
      if (is_art(basic_[c]) && xb_[c] > 0.0) {
        art_total += xb_[c];
        if (xb_[c] > worst_val) {
          worst_val = xb_[c];
          worst = basic_[c] - int(N);
        }
      }
    }
    if (art_total > 3.0 * kFeasTol) {
      farkas_row_ = worst;
      return false;
    }
    // Freeze surviving artificials at zero for phase 2.
    for (int r = 0; r < m; ++r) art_ub_[r] = 0.0;
    return true;
  }

  bool phase2() {
    in_phase1_ = false;
    for (int r = 0; r < m; ++r) art_ub_[r] = 0.0;
    return iterate();
  }

  double cost(int j) const {
    if (is_art(j)) return in_phase1_ ? 1.0 : 0.0;
    return in_phase1_ ? 0.0 : C.obj[j];
  }

  bool iterate() {
    const long max_iter = 10 * long(N) + 50;
    const long bland_after = 3 * long(N);
    long degen = 0;
    double y[3], w[3], col[3];
    while (true) {
      if (iterations_ >= max_iter) return false;
      // Dual values: y = c_B * B^{-1}.
      for (int r = 0; r < m; ++r) {
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += cost(basic_[c]) * binv_[c][r];
        y[r] = s;
      }
      bool bland = degen > bland_after;
      int enter = -1;
      double best = kDualTol;
      const double* a = C.a.data();
      for (std::size_t j = 0; j < N; ++j, a += m) {
        char p = pos_[j];
        if (p == 2) continue;
        double d = in_phase1_ ? 0.0 : C.obj[j];
        for (int r = 0; r < m; ++r) d -= y[r] * a[r];
        double viol = (p == 0) ? -d : d;
        if (viol > best) {
          best = viol;
          enter = int(j);
          if (bland) break;
        }
      }
      if (in_phase1_) {
        // Artificials at lower may re-enter while minimizing their sum.
        for (int r = 0; r < m; ++r) {
          int j = int(N) + r;
          bool basic = false;
          for (int c = 0; c < m; ++c) basic |= (basic_[c] == j);
          if (basic) continue;
          double d = 1.0 - y[r] * art_sign_[r];
          if (-d > best) {
            best = -d;
            enter = j;
          }
        }
      }
      if (enter < 0) return true;  // optimal

      char from = is_art(enter) ? 0 : pos_[enter];
      double sigma = (from == 0) ? 1.0 : -1.0;
      column(enter, col);
      for (int r = 0; r < m; ++r) {
        double s = 0.0;
        for (int c = 0; c < m; ++c) s += binv_[r][c] * col[c];
        w[r] = s;
      }
      double enter_range = is_art(enter) ? kInf : ub_;
      double t_best = enter_range;
      int leave = -1;
      bool leave_to_upper = false;
      for (int r = 0; r < m; ++r) {
        double rate = -sigma * w[r];
        double hi = is_art(basic_[r]) ? art_ub_[basic_[r] - int(N)] : ub_;
        double t;
        bool to_upper;
        if (rate < -kPivTol) {
          t = xb_[r] / (-rate);
          to_upper = false;
        } else if (rate > kPivTol) {
          if (hi == kInf) continue;
          t = (hi - xb_[r]) / rate;
          to_upper = true;
        } else {
          continue;
        }
        if (t < 0.0) t = 0.0;
        if (t < t_best - 1e-12 ||
            (t < t_best + 1e-12 && leave >= 0 && basic_[r] < basic_[leave])) {
          t_best = t;
          leave = r;
          leave_to_upper = to_upper;
        }
      }
      if (t_best == kInf) return false;  // numerically unbounded; treated as failure
      ++iterations_;
      if (t_best <= 1e-12)
        ++degen;
      else
        degen = 0;

      if (leave < 0) {
        // Bound flip of the entering column.
        if (from == 0) {
          pos_[enter] = 1;
          beff_add(enter, -ub_);
        } else {
          pos_[enter] = 0;
          beff_add(enter, ub_);
        }
      } else {
        int out = basic_[leave];
        if (from == 1) {
          beff_add(enter, ub_);  // leaves the at-upper set
        }
        if (leave_to_upper && !is_art(out)) {
          pos_[out] = 1;
          beff_add(out, -ub_);
        } else if (!is_art(out)) {
          pos_[out] = 0;
        }
        basic_[leave] = enter;
        if (!is_art(enter)) pos_[enter] = 2;
        if (!factor()) return false;
      }
      compute_xb();
    }
  }

  void collect(LpSolution& sol, double report_scale) {
    sol.basis.valid = true;
    sol.basis.nbasic = m;
    for (int c = 0; c < m; ++c) {
      sol.basis.basic[c] = basic_[c];
      if (is_art(basic_[c])) sol.basis.valid = false;
    }
    double obj = 0.0;
    std::vector<std::pair<std::size_t, double>> sup;
    for (std::size_t j = 0; j < N; ++j) {
      if (pos_[j] == 1) {
        sup.emplace_back(j, ub_);
        sol.basis.upper.push_back(int(j));
        obj += C.obj[j] * ub_;
      }
    }
    for (int c = 0; c < m; ++c) {
      if (is_art(basic_[c])) continue;
      double v = xb_[c];
      if (v < 0.0) v = 0.0;
      if (v > ub_) v = ub_;
      // Basic variables stuck at numerical zero are not support.
      if (v > 1e-11 * std::max(1.0, ub_)) sup.emplace_back(std::size_t(basic_[c]), v);
      obj += C.obj[basic_[c]] * v;
    }
    std::sort(sup.begin(), sup.end());
    sol.support = std::move(sup);
    sol.objective = obj;
    sol.objective_scaled = obj * report_scale;
  }
};

}  // namespace

std::shared_ptr<const LpColumns> build_lp_columns(const PhaseGrid& phase,
                                                  const EntropySpec& entropy) {
  auto cols = std::make_shared<LpColumns>();
  int n = phase.ncomp;
  cols->nrows = n + 1;
  cols->ncols = phase.size();
  // Row equilibration: each equality row scaled to unit inf-norm.
  cols->row_scale[0] = 1.0 / phase.du;
  for (int k = 0; k < n; ++k) {
    double mx = 0.0;
    for (const State& u : phase.centers) mx = std::max(mx, std::abs(u[k]));
    cols->row_scale[k + 1] = (mx > 0.0) ? 1.0 / (phase.du * mx) : 1.0;
  }
  cols->a.resize(cols->ncols * std::size_t(cols->nrows));
  cols->obj.resize(cols->ncols);
  for (std::size_t l = 0; l < cols->ncols; ++l) {
    double* a = cols->a.data() + l * cols->nrows;
    a[0] = phase.du * cols->row_scale[0];
    for (int k = 0; k < n; ++k) a[k + 1] = phase.du * phase.centers[l][k] * cols->row_scale[k + 1];
    cols->obj[l] = entropy.evaluate(phase.centers[l]);
  }
  return cols;
}

LpInstance assemble_lp(const State& moment, const PhaseGrid& phase, const EntropySpec& entropy,
                       double lambda_f, double dxi, double p0,
                       std::shared_ptr<const LpColumns> cached) {
  if (!(lambda_f > 0.0) || lambda_f > 1.0) throw LpError("lambda_F must be in (0, 1]");
  for (int k = 0; k < phase.ncomp; ++k)
    if (!std::isfinite(moment[k])) throw LpError("non-finite moment");
  if (lambda_f * double(phase.size()) < 1.0)
    throw LpError("structurally infeasible: lambda_F * cell count < 1, total mass cannot reach 1");

  LpInstance inst;
  inst.cols = cached ? std::move(cached) : build_lp_columns(phase, entropy);
  inst.du = phase.du;
  inst.upper = lambda_f / phase.du;
  inst.report_scale = dxi * phase.du * p0;
  inst.moment = moment;
  // Project round-off-level hull violations onto the center box.
  for (int k = 0; k < phase.ncomp; ++k) {
    double lo = phase.axis_center(k, 0);
    double hi = phase.axis_center(k, phase.count[k] - 1);
    if (inst.moment[k] < lo && inst.moment[k] >= lo - 1e-7) inst.moment[k] = lo;
    if (inst.moment[k] > hi && inst.moment[k] <= hi + 1e-7) inst.moment[k] = hi;
  }
  inst.b[0] = 1.0 * inst.cols->row_scale[0];
  for (int k = 0; k < phase.ncomp; ++k) inst.b[k + 1] = inst.moment[k] * inst.cols->row_scale[k + 1];
  return inst;
}

LpSolution solve(const LpInstance& instance, const LpBasis* warm_start) {
  Simplex s(*instance.cols, instance.b, instance.upper);
  return s.run(instance.report_scale, warm_start);
}

void dump_lp(const LpInstance& instance, std::ostream& os) {
  const LpColumns& c = *instance.cols;
  os << "rows " << c.nrows << " cols " << c.ncols << "\n";
  for (int r = 0; r < c.nrows; ++r) {
    os << "row " << r;
    for (std::size_t l = 0; l < c.ncols; ++l)
      os << ' ' << c.a[l * c.nrows + r] / c.row_scale[r];
    os << " = " << instance.b[r] / c.row_scale[r] << "\n";
  }
  os << "bounds 0 " << instance.upper << "\n";
  os << "objective";
  for (std::size_t l = 0; l < c.ncols; ++l) os << ' ' << c.obj[l];
  os << "\n";
}

State measure_mean(const Support& weights, const PhaseGrid& phase) {
  State mean{};
  for (const auto& [l, w] : weights)
    for (int k = 0; k < phase.ncomp; ++k) mean[k] += phase.centers[l][k] * w;
  for (int k = 0; k < phase.ncomp; ++k) mean[k] *= phase.du;
  return mean;
}

State measure_mean(const double* weights, const PhaseGrid& phase) {
  State mean{};
  for (std::size_t l = 0; l < phase.size(); ++l)
    for (int k = 0; k < phase.ncomp; ++k) mean[k] += phase.centers[l][k] * weights[l];
  for (int k = 0; k < phase.ncomp; ++k) mean[k] *= phase.du;
  return mean;
}

State measure_flux_average(const Support& weights, const PhaseGrid& phase,
                           const ProblemDef& problem, double x) {
  State avg{};
  for (const auto& [l, w] : weights) {
    State f = problem.flux(phase.centers[l], x);
    for (int k = 0; k < problem.ncomp; ++k) avg[k] += f[k] * w;
  }
  for (int k = 0; k < problem.ncomp; ++k) avg[k] *= phase.du;
  return avg;
}

double measure_speed_average(const Support& weights, const PhaseGrid& phase,
                             const ProblemDef& problem, double x) {
  double s = 0.0;
  for (const auto& [l, w] : weights) s += problem.max_wave_speed(phase.centers[l], x) * w;
  return s * phase.du;
}

LpEngine::LpEngine(const PhaseGrid& phase, const EntropySpec& entropy, double lambda_f, double dxi,
                   double p0)
    : phase_(&phase), entropy_(entropy), lambda_f_(lambda_f), dxi_(dxi), p0_(p0) {
  cols_ = build_lp_columns(phase, entropy);
  // Surface structural infeasibility at construction time.
  (void)assemble_lp(phase.centers.front(), phase, entropy_, lambda_f_, dxi_, p0_, cols_);
}

LpInstance LpEngine::instance(const State& moment) const {
  return assemble_lp(moment, *phase_, entropy_, lambda_f_, dxi_, p0_, cols_);
}

LpSolution LpEngine::solve_moment(const State& moment, const LpBasis* warm) const {
  return solve(instance(moment), warm);
}

}  // namespace ym
