#include "ym/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ym {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& key, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ", key '" + key + "': " + what);
}

double to_double(int line, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) fail(line, key, "trailing characters in number '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    fail(line, key, "expected a number, got '" + v + "'");
  }
}

int to_int(int line, const std::string& key, const std::string& v) {
  double x = to_double(line, key, v);
  int n = int(x);
  if (double(n) != x) fail(line, key, "expected an integer, got '" + v + "'");
  return n;
}

bool to_bool(int line, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(line, key, "expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(int line, const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(line, key, item));
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void set_phase(std::vector<std::pair<double, double>>& box, int comp, bool upper, double v) {
  if (int(box.size()) <= comp) box.resize(comp + 1, {0.0, 0.0});
  (upper ? box[comp].second : box[comp].first) = v;
}

}  // namespace

ProblemDef ExperimentConfig::build_problem() const {
  return make_problem(problem_id, kappa, gamma);
}

PhaseGrid ExperimentConfig::build_phase(const ProblemDef& problem) const {
  auto box = phase_box.empty() ? problem.default_phase_box : phase_box;
  if (int(box.size()) != problem.ncomp)
    throw ConfigError("phase box needs " + std::to_string(problem.ncomp) + " component ranges");
  std::vector<int> counts = phase_counts;
  if (counts.empty()) throw ConfigError("missing required key 'phase.n'");
  if (counts.size() == 1 && problem.ncomp == 2) counts.push_back(counts[0]);
  if (int(counts.size()) != problem.ncomp)
    throw ConfigError("phase cell counts need " + std::to_string(problem.ncomp) + " entries");
  return build_phase_grid(box, counts);
}

EntropySpec ExperimentConfig::pick_entropy(const ProblemDef& problem) const {
  if (entropy.empty()) return problem.entropies.front();
  if (entropy == "kruzhkov") {
    problem.entropy("kruzhkov");  // rejects problems without a Kruzhkov family
    return kruzhkov_entropy(kruzhkov_c);
  }
  return problem.entropy(entropy);
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool saw_id = false, saw_nx = false, saw_tfinal = false;

  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    std::string s = raw;
    if (std::size_t h = s.find('#'); h != std::string::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line) + ": expected 'section.key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty() || val.empty()) fail(line, key, "empty key or value");

    if (key == "problem.id") {
      cfg.problem_id = val;
      saw_id = true;
    } else if (key == "problem.kappa") {
      cfg.kappa = to_double(line, key, val);
    } else if (key == "problem.gamma") {
      cfg.gamma = to_double(line, key, val);
    } else if (key == "problem.entropy") {
      cfg.entropy = val;
    } else if (key == "problem.kruzhkov_c") {
      cfg.kruzhkov_c = to_double(line, key, val);
    } else if (key == "grid.x_min") {
      cfg.x_min = to_double(line, key, val);
    } else if (key == "grid.x_max") {
      cfg.x_max = to_double(line, key, val);
    } else if (key == "grid.nx") {
      cfg.nx = to_int(line, key, val);
      saw_nx = true;
    } else if (key == "grid.xi_min") {
      cfg.xi_min = to_double(line, key, val);
    } else if (key == "grid.xi_max") {
      cfg.xi_max = to_double(line, key, val);
    } else if (key == "grid.nxi") {
      cfg.nxi = to_int(line, key, val);
    } else if (key == "phase.u1_min") {
      set_phase(cfg.phase_box, 0, false, to_double(line, key, val));
    } else if (key == "phase.u1_max") {
      set_phase(cfg.phase_box, 0, true, to_double(line, key, val));
    } else if (key == "phase.u2_min") {
      set_phase(cfg.phase_box, 1, false, to_double(line, key, val));
    } else if (key == "phase.u2_max") {
      set_phase(cfg.phase_box, 1, true, to_double(line, key, val));
    } else if (key == "phase.n") {
      cfg.phase_counts = {to_int(line, key, val)};
    } else if (key == "phase.n1") {
      if (cfg.phase_counts.empty()) cfg.phase_counts = {0};
      cfg.phase_counts[0] = to_int(line, key, val);
    } else if (key == "phase.n2") {
      if (cfg.phase_counts.size() < 2) cfg.phase_counts.resize(2, 0);
      cfg.phase_counts[1] = to_int(line, key, val);
    } else if (key == "scheme.order") {
      cfg.scheme.order = to_int(line, key, val);
    } else if (key == "scheme.mode") {
      if (val == "young-measure")
        cfg.scheme.mode = Mode::YoungMeasure;
      else if (val == "collocation")
        cfg.scheme.mode = Mode::Collocation;
      else
        fail(line, key, "expected young-measure or collocation");
    } else if (key == "scheme.flux_variant") {
      if (val == "reconstruct-then-average" || val == "a")
        cfg.scheme.flux_variant = FluxVariant::ReconstructThenAverage;
      else if (val == "average-then-reconstruct" || val == "b")
        cfg.scheme.flux_variant = FluxVariant::AverageThenReconstruct;
      else
        fail(line, key, "expected reconstruct-then-average or average-then-reconstruct");
    } else if (key == "scheme.correction_variant") {
      if (val == "flux")
        cfg.scheme.correction_variant = CorrectionVariant::Flux;
      else if (val == "point-value")
        cfg.scheme.correction_variant = CorrectionVariant::PointValue;
      else
        fail(line, key, "expected flux or point-value");
    } else if (key == "scheme.theta") {
      cfg.scheme.theta = to_double(line, key, val);
    } else if (key == "scheme.cfl") {
      cfg.scheme.cfl = to_double(line, key, val);
    } else if (key == "scheme.bc") {
      if (val == "free")
        cfg.scheme.bc = Boundary::Free;
      else if (val == "periodic")
        cfg.scheme.bc = Boundary::Periodic;
      else
        fail(line, key, "expected free or periodic");
    } else if (key == "lp.lambda_f") {
      cfg.lambda_f = to_double(line, key, val);
    } else if (key == "run.initial") {
      cfg.initial = val;
    } else if (key == "run.t_final") {
      cfg.t_final = to_double(line, key, val);
      saw_tfinal = true;
    } else if (key == "run.output_dir") {
      cfg.output_dir = val;
    } else if (key == "run.emit_plots") {
      cfg.emit_plots = to_bool(line, key, val);
    } else if (key == "run.workers") {
      cfg.scheme.workers = to_int(line, key, val);
    } else if (key == "output.times") {
      cfg.output_times = to_list(line, key, val);
    } else {
      fail(line, key, "unknown key");
    }
  }

  if (!saw_id) throw ConfigError("missing required key 'problem.id'");
  if (!saw_nx) throw ConfigError("missing required key 'grid.nx'");
  if (!saw_tfinal) throw ConfigError("missing required key 'run.t_final'");
  if (cfg.nx < 1) throw ConfigError("grid.nx must be >= 1");
  if (cfg.nxi < 1) throw ConfigError("grid.nxi must be >= 1");
  if (!(cfg.x_max > cfg.x_min)) throw ConfigError("grid.x_max must exceed grid.x_min");
  if (!(cfg.lambda_f > 0.0) || cfg.lambda_f > 1.0)
    throw ConfigError("lp.lambda_f must lie in (0, 1]");
  if (cfg.t_final < 0.0) throw ConfigError("run.t_final must be >= 0");
  cfg.scheme.validate();
  for (auto& [lo, hi] : cfg.phase_box)
    if (!(hi > lo)) throw ConfigError("phase box bounds must satisfy min < max");
  for (double t : cfg.output_times)
    if (t < 0.0 || t > cfg.t_final)
      throw ConfigError("output.times entries must lie in [0, t_final]");
  if (cfg.initial.empty()) {
    // Each problem defaults to the experiment that introduces it.
    if (cfg.problem_id == "burgers") cfg.initial = "1";
    else if (cfg.problem_id == "euler") cfg.initial = "2";
    else if (cfg.problem_id == "discflux-a") cfg.initial = "4";
    else if (cfg.problem_id == "discflux-b") cfg.initial = "5";
    else if (cfg.problem_id == "pressureless") cfg.initial = "6";
  }
  cfg.build_problem();  // validates problem id and parameters now
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const ExperimentConfig& cfg) {
  ProblemDef problem = cfg.build_problem();
  std::ostringstream os;
  os << "problem.id = " << cfg.problem_id << "\n";
  if (cfg.problem_id == "euler") {
    os << "problem.kappa = " << fmt(cfg.kappa) << "\n";
    os << "problem.gamma = " << fmt(cfg.gamma) << "\n";
  }
  EntropySpec ent = cfg.pick_entropy(problem);
  os << "problem.entropy = " << ent.name << "\n";
  if (ent.tag == EntropyTag::Kruzhkov)
    os << "problem.kruzhkov_c = " << fmt(cfg.kruzhkov_c) << "\n";
  os << "grid.x_min = " << fmt(cfg.x_min) << "\n";
  os << "grid.x_max = " << fmt(cfg.x_max) << "\n";
  os << "grid.nx = " << cfg.nx << "\n";
  os << "grid.xi_min = " << fmt(cfg.xi_min) << "\n";
  os << "grid.xi_max = " << fmt(cfg.xi_max) << "\n";
  os << "grid.nxi = " << cfg.nxi << "\n";
  PhaseGrid phase = cfg.build_phase(problem);
  for (int c = 0; c < phase.ncomp; ++c) {
    std::string tag = "u" + std::to_string(c + 1);
    os << "phase." << tag << "_min = " << fmt(phase.u_min[c]) << "\n";
    os << "phase." << tag << "_max = " << fmt(phase.u_max[c]) << "\n";
    os << "phase.n" << (c + 1) << " = " << phase.count[c] << "\n";
  }
  os << "scheme.order = " << cfg.scheme.order << "\n";
  os << "scheme.mode = "
     << (cfg.scheme.mode == Mode::YoungMeasure ? "young-measure" : "collocation") << "\n";
  os << "scheme.flux_variant = "
     << (cfg.scheme.flux_variant == FluxVariant::ReconstructThenAverage
             ? "reconstruct-then-average"
             : "average-then-reconstruct")
     << "\n";
  os << "scheme.correction_variant = "
     << (cfg.scheme.correction_variant == CorrectionVariant::Flux ? "flux" : "point-value")
     << "\n";
  os << "scheme.theta = " << fmt(cfg.scheme.theta) << "\n";
  os << "scheme.cfl = " << fmt(cfg.scheme.cfl) << "\n";
  os << "scheme.bc = " << (cfg.scheme.bc == Boundary::Free ? "free" : "periodic") << "\n";
  os << "lp.lambda_f = " << fmt(cfg.lambda_f) << "\n";
  if (!cfg.initial.empty()) os << "run.initial = " << cfg.initial << "\n";
  os << "run.t_final = " << fmt(cfg.t_final) << "\n";
  os << "run.output_dir = " << cfg.output_dir << "\n";
  os << "run.emit_plots = " << (cfg.emit_plots ? "true" : "false") << "\n";
  os << "run.workers = " << cfg.scheme.workers << "\n";
  if (!cfg.output_times.empty()) {
    os << "output.times = ";
    for (std::size_t k = 0; k < cfg.output_times.size(); ++k)
      os << (k ? ", " : "") << fmt(cfg.output_times[k]);
    os << "\n";
  }
  return os.str();
}

}  // namespace ym
