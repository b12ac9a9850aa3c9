#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ym/config.hpp"
#include "ym/runner.hpp"
#include "ym/svg.hpp"

using namespace ym;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("ymlp_test_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("minimal config accepted with defaults") {
  std::string text =
      "problem.id = burgers\n"
      "grid.nx = 100\n"
      "grid.nxi = 10\n"
      "phase.u1_min = -1.5\n"
      "phase.u1_max = 1.5\n"
      "phase.n = 100\n"
      "run.t_final = 0.25\n";
  ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.scheme.cfl == doctest::Approx(0.45));
  CHECK(cfg.scheme.theta == doctest::Approx(1.5));
  CHECK(cfg.lambda_f == doctest::Approx(1.0));
  CHECK(cfg.scheme.mode == Mode::YoungMeasure);
  CHECK(cfg.initial == "1");
  CHECK(cfg.nx == 100);
}

TEST_CASE("config rejections name line and key") {
  CHECK_THROWS_WITH_AS(
      parse_config("problem.id = burgers\ngrid.nx = 10\nrun.t_final = 1\nscheme.cfl = 1.5\n"),
      doctest::Contains("CFL"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config("problem.id = burger\ngrid.nx = 10\nphase.n = 10\nrun.t_final = 1\n"),
      doctest::Contains("known: burgers"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("problem.id = burgers\ngrid.nx = 10\nrun.t_final = 1\n"
                                    "bogus.key = 1\n"),
                       doctest::Contains("line 4"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("grid.nx = 10\nrun.t_final = 1\n"),
                       doctest::Contains("problem.id"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("problem.id = burgers\ngrid.nx = ten\nrun.t_final = 1\n"),
                       doctest::Contains("grid.nx"), ConfigError);
  // comments and blank lines are fine
  CHECK_NOTHROW(parse_config("# heading\n\nproblem.id = burgers\ngrid.nx = 4  # inline\n"
                             "phase.n = 10\nrun.t_final = 0\n"));
}

TEST_CASE("format_double round-trips bitwise") {
  std::mt19937_64 rng(11u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    double x = u(rng) * std::pow(10.0, int(u(rng) * 20.0));
    double back = std::stod(format_double(x));
    CHECK(back == x);
  }
  CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("moments csv round trip") {
  TempDir tmp("csv");
  SpatialGrid spatial(-1.0, 1.0, 7);
  StochasticGrid stochastic(-1.0, 1.0, 3);
  MomentField u(3, 7);
  std::mt19937_64 rng(3u);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (auto& v : u.values) v = State{d(rng), d(rng)};
  std::string path = (tmp.path / "m.csv").string();
  write_moments_csv(path, spatial, stochastic, 2, u);
  MomentsCsv back = read_moments_csv(path);
  CHECK(back.nxi == 3);
  CHECK(back.nx == 7);
  CHECK(back.ncomp == 2);
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    CHECK(back.moments.values[k][0] == u.values[k][0]);
    CHECK(back.moments.values[k][1] == u.values[k][1]);
  }
  CHECK(back.x[0] == spatial.center(0));
  CHECK_THROWS_AS(read_moments_csv((tmp.path / "missing.csv").string()), ConfigError);
}

TEST_CASE("manifest echo reparses to the same experiment") {
  ExperimentConfig cfg = parse_config(
      "problem.id = euler\nproblem.kappa = 1\nproblem.gamma = 1.5\n"
      "grid.x_min = -1\ngrid.x_max = 1\ngrid.nx = 12\ngrid.nxi = 2\n"
      "phase.u1_min = 0.3\nphase.u1_max = 1.8\nphase.u2_min = 0.3\nphase.u2_max = 1.3\n"
      "phase.n = 6\nscheme.order = 2\nrun.t_final = 0.01\n");
  ExperimentConfig back = parse_config(render_config(cfg));
  CHECK(back.problem_id == cfg.problem_id);
  CHECK(back.nx == cfg.nx);
  CHECK(back.t_final == cfg.t_final);
  CHECK(back.scheme.order == cfg.scheme.order);
  CHECK(back.phase_box == cfg.phase_box);
  CHECK(render_config(back) == render_config(cfg));
}

TEST_CASE("zero-length run reproduces the initial data and full outputs") {
  TempDir tmp("zero");
  ExperimentConfig cfg = parse_config(
      "problem.id = burgers\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 10\ngrid.nxi = 2\n"
      "phase.u1_min = -1.5\nphase.u1_max = 1.5\nphase.n = 30\nrun.t_final = 0\n");
  cfg.output_dir = (tmp.path / "run").string();
  RunResult res = run_experiment(cfg);
  CHECK(res.steps == 0);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "moments_final.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "support_final.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "diagnostics.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "manifest"));
  MomentsCsv m = read_moments_csv((fs::path(cfg.output_dir) / "moments_final.csv").string());
  auto init = initial_data("1");
  SpatialGrid spatial(0.0, 1.0, 10);
  StochasticGrid stochastic(-1.0, 1.0, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(m.moments.at(i, j)[0] ==
            doctest::Approx(init(spatial.center(j), stochastic.node(i))[0]));
}

TEST_CASE("compare of identical runs is zero and mismatch throws") {
  TempDir tmp("cmp");
  ExperimentConfig cfg = parse_config(
      "problem.id = burgers\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 12\ngrid.nxi = 2\n"
      "phase.u1_min = -1.5\nphase.u1_max = 1.5\nphase.n = 20\nrun.t_final = 0.05\n");
  cfg.output_dir = (tmp.path / "a").string();
  run_experiment(cfg);
  cfg.output_dir = (tmp.path / "b").string();
  run_experiment(cfg);
  NormReport r = compare_runs((tmp.path / "a").string(), (tmp.path / "b").string());
  CHECK(r.l1[0] == 0.0);
  CHECK(r.l2[0] == 0.0);
  CHECK(r.linf[0] == 0.0);

  ExperimentConfig other = cfg;
  other.nx = 6;
  other.output_dir = (tmp.path / "c").string();
  run_experiment(other);
  CHECK_THROWS_AS(compare_runs((tmp.path / "a").string(), (tmp.path / "c").string()),
                  ConfigError);
}

TEST_CASE("plots are deterministic bytes") {
  TempDir tmp("svg");
  ExperimentConfig cfg = parse_config(
      "problem.id = burgers\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 16\ngrid.nxi = 3\n"
      "phase.u1_min = -1.5\nphase.u1_max = 1.5\nphase.n = 20\nrun.t_final = 0.05\n");
  cfg.output_dir = (tmp.path / "run").string();
  run_experiment(cfg);
  emit_plots(cfg.output_dir);
  std::string first = slurp(fs::path(cfg.output_dir) / "heatmap_u1.svg");
  std::string scat = slurp(fs::path(cfg.output_dir) / "support.svg");
  emit_plots(cfg.output_dir);
  CHECK(first == slurp(fs::path(cfg.output_dir) / "heatmap_u1.svg"));
  CHECK(scat == slurp(fs::path(cfg.output_dir) / "support.svg"));
  CHECK(first.find("<svg") == 0);
  CHECK(first.find("scale min=") != std::string::npos);
  CHECK_THROWS_AS(emit_plots((tmp.path / "nowhere").string()), ConfigError);
}

TEST_CASE("snapshots written at requested times") {
  TempDir tmp("snap");
  ExperimentConfig cfg = parse_config(
      "problem.id = burgers\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 10\ngrid.nxi = 2\n"
      "phase.u1_min = -1.5\nphase.u1_max = 1.5\nphase.n = 20\nrun.t_final = 0.1\n"
      "output.times = 0.05, 0.1\n");
  cfg.output_dir = (tmp.path / "run").string();
  run_experiment(cfg);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "snapshots" / "moments_t0.05.csv"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "snapshots" / "moments_t0.1.csv"));
}
