#include "ym/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ym/collocation.hpp"
#include "ym/svg.hpp"

namespace fs = std::filesystem;

namespace ym {

std::string format_double(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_moments_csv(const std::string& path, const SpatialGrid& spatial,
                       const StochasticGrid& stochastic, int ncomp, const MomentField& moments) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "i,xi,j,x,u1";
  if (ncomp == 2) out << ",u2";
  out << "\n";
  for (int i = 0; i < stochastic.nxi; ++i) {
    for (int j = 0; j < spatial.nx; ++j) {
      out << i << "," << format_double(stochastic.node(i)) << "," << j << ","
          << format_double(spatial.center(j)) << "," << format_double(moments.at(i, j)[0]);
      if (ncomp == 2) out << "," << format_double(moments.at(i, j)[1]);
      out << "\n";
    }
  }
}

MomentsCsv read_moments_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty file '" + path + "'");
  int ncomp = header.find(",u2") != std::string::npos ? 2 : 1;

  struct Row {
    int i, j;
    double xi, x;
    State u;
  };
  std::vector<Row> rows;
  std::string line;
  int nxi = 0, nx = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r{};
    std::stringstream ss(line);
    std::string cell;
    auto next = [&]() {
      if (!std::getline(ss, cell, ',')) throw ConfigError("short row in '" + path + "'");
      return cell;
    };
    r.i = std::stoi(next());
    r.xi = std::stod(next());
    r.j = std::stoi(next());
    r.x = std::stod(next());
    r.u[0] = std::stod(next());
    if (ncomp == 2) r.u[1] = std::stod(next());
    nxi = std::max(nxi, r.i + 1);
    nx = std::max(nx, r.j + 1);
    rows.push_back(r);
  }
  MomentsCsv out;
  out.nxi = nxi;
  out.nx = nx;
  out.ncomp = ncomp;
  out.xi.resize(nxi);
  out.x.resize(nx);
  out.moments = MomentField(nxi, nx);
  for (const Row& r : rows) {
    out.xi[r.i] = r.xi;
    out.x[r.j] = r.x;
    out.moments.at(r.i, r.j) = r.u;
  }
  return out;
}

namespace {

void write_support_csv(const std::string& path, const std::vector<LpSolution>& sols,
                       const SpatialGrid& spatial, int nxi, const PhaseGrid& phase) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << "i,j,x,l";
  for (int c = 0; c < phase.ncomp; ++c) out << ",k" << c + 1;
  for (int c = 0; c < phase.ncomp; ++c) out << ",u" << c + 1;
  out << ",weight\n";
  for (int i = 0; i < nxi; ++i) {
    for (int j = 0; j < spatial.nx; ++j) {
      const LpSolution& s = sols[std::size_t(i) * spatial.nx + j];
      for (const auto& [l, w] : s.support) {
        auto multi = unflatten_index(l, phase.count, phase.ncomp);
        out << i << "," << j << "," << format_double(spatial.center(j)) << "," << l;
        for (int c = 0; c < phase.ncomp; ++c) out << "," << multi[c];
        for (int c = 0; c < phase.ncomp; ++c) out << "," << format_double(phase.centers[l][c]);
        out << "," << format_double(w) << "\n";
      }
    }
  }
}

PhaseGrid phase_for(const ExperimentConfig& cfg, const ProblemDef& problem) {
  if (cfg.scheme.mode == Mode::Collocation && cfg.phase_counts.empty()) {
    // Collocation never solves the LP; a token grid satisfies the context.
    std::vector<int> counts(problem.ncomp, 2);
    return build_phase_grid(problem.default_phase_box, counts);
  }
  return cfg.build_phase(problem);
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  ProblemDef problem = cfg.build_problem();
  SpatialGrid spatial = cfg.build_spatial();
  StochasticGrid stochastic = cfg.build_stochastic();
  PhaseGrid phase = phase_for(cfg, problem);
  EntropySpec entropy = cfg.pick_entropy(problem);
  if (cfg.initial.empty()) throw ConfigError("missing required key 'run.initial'");
  auto init = initial_data(cfg.initial);

  SchemeContext ctx(problem, spatial, stochastic, phase, cfg.scheme, entropy, cfg.lambda_f);
  RunState state;
  state.moments = sample_initial_data(init, spatial, stochastic);

  fs::create_directories(fs::path(cfg.output_dir) / "snapshots");
  {
    std::ofstream man(fs::path(cfg.output_dir) / "manifest");
    if (!man) throw ConfigError("cannot write manifest in '" + cfg.output_dir + "'");
    man << render_config(cfg);
  }

  std::ofstream diag(fs::path(cfg.output_dir) / "diagnostics.csv");
  diag << "step,t,dt,conservation_residual,lp_iterations\n";
  auto on_step = [&](const RunState&, const StepDiagnostics& d) {
    diag << d.step << "," << format_double(d.t) << "," << format_double(d.dt) << ","
         << format_double(d.conservation_residual) << "," << d.lp_iterations << "\n";
  };

  std::vector<double> times = cfg.output_times;
  times.push_back(cfg.t_final);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  for (double t_k : times) {
    if (t_k > state.t) advance_to(ctx, state, t_k, on_step);
    write_moments_csv(
        (fs::path(cfg.output_dir) / "snapshots" / ("moments_t" + format_double(t_k) + ".csv"))
            .string(),
        spatial, stochastic, problem.ncomp, state.moments);
  }

  write_moments_csv((fs::path(cfg.output_dir) / "moments_final.csv").string(), spatial,
                    stochastic, problem.ncomp, state.moments);

  if (cfg.scheme.mode == Mode::YoungMeasure) {
    std::vector<LpSolution> sols = ctx.reconstruct_measures(state.moments);
    write_support_csv((fs::path(cfg.output_dir) / "support_final.csv").string(), sols, spatial,
                      stochastic.nxi, phase);
  }

  if (cfg.emit_plots) emit_plots(cfg.output_dir);
  return {cfg, std::move(state.moments), state.step};
}

void emit_plots(const std::string& dir) {
  MomentsCsv data = read_moments_csv((fs::path(dir) / "moments_final.csv").string());
  for (int c = 0; c < data.ncomp; ++c) {
    std::string tag = "u" + std::to_string(c + 1);
    std::ofstream hm(fs::path(dir) / ("heatmap_" + tag + ".svg"));
    hm << svg_heatmap(data, c, tag + "(x, xi)");
    std::ofstream ln(fs::path(dir) / ("lines_" + tag + ".svg"));
    ln << svg_line_overlay(data, c, tag + "(x) per xi");
  }

  fs::path supp = fs::path(dir) / "support_final.csv";
  if (fs::exists(supp)) {
    std::ifstream in(supp);
    std::string header, line;
    std::getline(in, header);
    std::vector<SupportPoint> pts;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::vector<std::string> cells;
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() < 6) continue;
      SupportPoint p;
      p.x = std::stod(cells[2]);
      // u1 column follows the multi-index columns; weight is last.
      p.u = std::stod(cells[cells.size() - 2 - (cells.size() > 7 ? 1 : 0)]);
      p.weight = std::stod(cells.back());
      pts.push_back(p);
    }
    std::ofstream sc(fs::path(dir) / "support.svg");
    sc << svg_support_scatter(pts, "measure support");
  }
}

NormReport compare_runs(const std::string& dir_a, const std::string& dir_b) {
  MomentsCsv a = read_moments_csv((fs::path(dir_a) / "moments_final.csv").string());
  MomentsCsv b = read_moments_csv((fs::path(dir_b) / "moments_final.csv").string());
  if (a.nxi != b.nxi || a.nx != b.nx || a.ncomp != b.ncomp)
    throw ConfigError("compare: grid mismatch between '" + dir_a + "' and '" + dir_b + "'");

  double dx = 1.0;
  fs::path man = fs::path(dir_a) / "manifest";
  if (fs::exists(man)) {
    std::ifstream in(man);
    std::stringstream buf;
    buf << in.rdbuf();
    ExperimentConfig cfg = parse_config(buf.str());
    dx = (cfg.x_max - cfg.x_min) / cfg.nx;
  } else if (a.nx > 1) {
    dx = a.x[1] - a.x[0];
  }

  NormReport r;
  r.ncomp = a.ncomp;
  double wcell = dx / a.nxi;
  for (int c = 0; c < a.ncomp; ++c) {
    double l1 = 0.0, l2 = 0.0, li = 0.0;
    for (int i = 0; i < a.nxi; ++i) {
      for (int j = 0; j < a.nx; ++j) {
        double d = std::abs(a.moments.at(i, j)[c] - b.moments.at(i, j)[c]);
        l1 += d * wcell;
        l2 += d * d * wcell;
        li = std::max(li, d);
      }
    }
    r.l1[c] = l1;
    r.l2[c] = std::sqrt(l2);
    r.linf[c] = li;
  }
  return r;
}

}  // namespace ym
