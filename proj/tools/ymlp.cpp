#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ym/collocation.hpp"
#include "ym/runner.hpp"

namespace {

int lp_selftest() {
  using namespace ym;
  std::mt19937 rng(20240901u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PhaseGrid phase = build_phase_grid({{-1.5, 1.5}}, {100});
  LpEngine engine(phase, quadratic_entropy(), 1.0);
  int checks = 0;

  // Atomic reconstruction at phase centers.
  for (int k = 0; k < 50; ++k) {
    std::size_t l = std::size_t(unit(rng) * phase.size());
    LpSolution sol = engine.solve_moment(phase.centers[l]);
    if (sol.status != LpStatus::Optimal || sol.support.size() != 1 ||
        sol.support[0].first != l ||
        std::abs(sol.support[0].second - 1.0 / phase.du) > 1e-9) {
      std::fprintf(stderr, "lp-selftest: atomic check failed at center %zu\n", l);
      return 2;
    }
    ++checks;
  }

  // Mean consistency and normalization for random interior moments.
  for (int k = 0; k < 50; ++k) {
    State m{-1.4 + 2.8 * unit(rng), 0.0};
    LpSolution sol = engine.solve_moment(m);
    if (sol.status != LpStatus::Optimal) {
      std::fprintf(stderr, "lp-selftest: solve failed for moment %g\n", m[0]);
      return 2;
    }
    double mass = 0.0;
    for (auto& [l, w] : sol.support) mass += w;
    State mean = measure_mean(sol.support, phase);
    if (std::abs(mass * phase.du - 1.0) > 1e-9 || std::abs(mean[0] - m[0]) > 1e-8) {
      std::fprintf(stderr, "lp-selftest: moment consistency failed for %g\n", m[0]);
      return 2;
    }
    ++checks;
  }

  // Spread-out support under a small weight cap.
  LpEngine capped(phase, quadratic_entropy(), 0.05);
  for (int k = 0; k < 20; ++k) {
    State m{-1.0 + 2.0 * unit(rng), 0.0};
    LpSolution sol = capped.solve_moment(m);
    if (sol.status != LpStatus::Optimal) {
      std::fprintf(stderr, "lp-selftest: capped solve failed for %g\n", m[0]);
      return 2;
    }
    for (auto& [l, w] : sol.support) {
      if (w > 0.05 / phase.du + 1e-12) {
        std::fprintf(stderr, "lp-selftest: weight cap violated at %zu\n", l);
        return 2;
      }
    }
    ++checks;
  }

  std::printf("lp-selftest: %d checks passed\n", checks);
  return 0;
}

int convergence_study(const std::string& config_path, int levels) {
  using namespace ym;
  ExperimentConfig base = load_config(config_path);
  std::vector<MomentField> solutions;
  std::vector<int> nxs;
  for (int m = 0; m <= levels; ++m) {
    ExperimentConfig cfg = base;
    cfg.nx = base.nx << m;
    ProblemDef problem = cfg.build_problem();
    SpatialGrid spatial = cfg.build_spatial();
    StochasticGrid stochastic = cfg.build_stochastic();
    PhaseGrid phase = cfg.phase_counts.empty() && cfg.scheme.mode == Mode::Collocation
                          ? build_phase_grid(problem.default_phase_box,
                                             std::vector<int>(problem.ncomp, 2))
                          : cfg.build_phase(problem);
    SchemeContext ctx(problem, spatial, stochastic, phase, cfg.scheme,
                      cfg.pick_entropy(problem), cfg.lambda_f);
    RunState state;
    state.moments = sample_initial_data(initial_data(cfg.initial), spatial, stochastic);
    advance_to(ctx, state, cfg.t_final);
    solutions.push_back(std::move(state.moments));
    nxs.push_back(cfg.nx);
  }

  // Successive-level L1 differences after cell-pair averaging of the finer
  // solution; observed order from their ratio.
  std::printf("level,nx,l1_diff,order\n");
  double prev = 0.0;
  for (int m = 0; m + 1 <= levels; ++m) {
    const MomentField& coarse = solutions[m];
    const MomentField& fine = solutions[m + 1];
    double dx = (base.x_max - base.x_min) / nxs[m];
    double l1 = 0.0;
    for (int i = 0; i < coarse.nxi; ++i)
      for (int j = 0; j < coarse.nx; ++j) {
        double avg = 0.5 * (fine.at(i, 2 * j)[0] + fine.at(i, 2 * j + 1)[0]);
        l1 += std::abs(coarse.at(i, j)[0] - avg) * dx / coarse.nxi;
      }
    if (m == 0)
      std::printf("%d,%d,%s,-\n", m, nxs[m], format_double(l1).c_str());
    else
      std::printf("%d,%d,%s,%s\n", m, nxs[m], format_double(l1).c_str(),
                  format_double(std::log2(prev / l1)).c_str());
    prev = l1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Young-measure solver for 1-D conservation laws"};
  app.require_subcommand(1);

  std::string config_path, plot_dir, dir_a, dir_b;
  int levels = 3;

  CLI::App* cmd_run = app.add_subcommand("run", "run an experiment from a config file");
  cmd_run->add_option("config", config_path, "config file")->required();
  CLI::App* cmd_plot = app.add_subcommand("plot", "render SVG figures for a finished run");
  cmd_plot->add_option("dir", plot_dir, "run output directory")->required();
  CLI::App* cmd_cmp = app.add_subcommand("compare", "norms of the difference of two runs");
  cmd_cmp->add_option("dirA", dir_a, "first run directory")->required();
  cmd_cmp->add_option("dirB", dir_b, "second run directory")->required();
  CLI::App* cmd_lp = app.add_subcommand("lp-selftest", "internal LP solver checks");
  CLI::App* cmd_conv = app.add_subcommand("convergence", "grid refinement study");
  cmd_conv->add_option("config", config_path, "base config file")->required();
  cmd_conv->add_option("--levels", levels, "number of refinement levels")->check(CLI::Range(1, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) {
      ym::ExperimentConfig cfg = ym::load_config(config_path);
      ym::RunResult res = ym::run_experiment(cfg);
      std::printf("run: %ld steps, outputs in %s\n", res.steps, cfg.output_dir.c_str());
      return 0;
    }
    if (cmd_plot->parsed()) {
      ym::emit_plots(plot_dir);
      return 0;
    }
    if (cmd_cmp->parsed()) {
      ym::NormReport r = ym::compare_runs(dir_a, dir_b);
      for (int c = 0; c < r.ncomp; ++c)
        std::printf("u%d,l1=%s,l2=%s,linf=%s\n", c + 1, ym::format_double(r.l1[c]).c_str(),
                    ym::format_double(r.l2[c]).c_str(), ym::format_double(r.linf[c]).c_str());
      return 0;
    }
    if (cmd_lp->parsed()) return lp_selftest();
    if (cmd_conv->parsed()) return convergence_study(config_path, levels);
  } catch (const ym::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 2;
  }
  return 1;
}
