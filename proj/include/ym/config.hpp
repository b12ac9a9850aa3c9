#ifndef YM_CONFIG_HPP_
#define YM_CONFIG_HPP_

#include <string>
#include <vector>

#include "ym/problems.hpp"
#include "ym/schemes.hpp"

namespace ym {

// Fully resolved experiment description. Parsed from `section.key = value`
// text with `#` comments; every field has a documented default except the
// required ones (problem.id, grid sizes, run.t_final).
struct ExperimentConfig {
  std::string problem_id;
  double kappa = 1.0;
  double gamma = 1.5;
  std::string entropy = "";  // empty = problem default
  double kruzhkov_c = 0.5;

  double x_min = 0.0, x_max = 1.0;
  int nx = 0;
  double xi_min = -1.0, xi_max = 1.0;
  int nxi = 1;

  // Phase box per component; empty = problem default box.
  std::vector<std::pair<double, double>> phase_box;
  std::vector<int> phase_counts;

  SchemeConfig scheme;
  double lambda_f = 1.0;

  std::string initial;  // initial_data key
  double t_final = 0.0;
  std::string output_dir = "out";
  bool emit_plots = false;
  std::vector<double> output_times;  // snapshot times; default = final only

  ProblemDef build_problem() const;
  SpatialGrid build_spatial() const { return SpatialGrid(x_min, x_max, nx); }
  StochasticGrid build_stochastic() const { return StochasticGrid(xi_min, xi_max, nxi); }
  PhaseGrid build_phase(const ProblemDef& problem) const;
  EntropySpec pick_entropy(const ProblemDef& problem) const;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Resolved-config echo used for the run manifest; parseable by parse_config.
std::string render_config(const ExperimentConfig& cfg);

}  // namespace ym

#endif  // YM_CONFIG_HPP_
