#ifndef YM_RUNNER_HPP_
#define YM_RUNNER_HPP_

#include <array>
#include <string>

#include "ym/config.hpp"
#include "ym/time_integration.hpp"

namespace ym {

struct RunResult {
  ExperimentConfig config;
  MomentField moments;
  long steps = 0;
};

// Runs one experiment and writes moments_final.csv, snapshots/, support
// dumps (YM mode), diagnostics.csv, and the manifest into the configured
// output directory.
RunResult run_experiment(const ExperimentConfig& cfg);

// Renders the SVG figures from the files a finished run left in `dir`.
void emit_plots(const std::string& dir);

struct NormReport {
  int ncomp = 1;
  std::array<double, 2> l1{}, l2{}, linf{};
};

// Per-component norms of the moments_final.csv difference between two runs
// on matching grids. L1 and L2 carry the dx/nxi cell weights.
NormReport compare_runs(const std::string& dir_a, const std::string& dir_b);

// Shortest round-trip decimal formatting used by every CSV writer.
std::string format_double(double x);

struct MomentsCsv {
  int nxi = 0, nx = 0, ncomp = 1;
  std::vector<double> xi, x;
  MomentField moments;
};

MomentsCsv read_moments_csv(const std::string& path);
void write_moments_csv(const std::string& path, const SpatialGrid& spatial,
                       const StochasticGrid& stochastic, int ncomp, const MomentField& moments);

}  // namespace ym

#endif  // YM_RUNNER_HPP_
