#include "fracwave/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/format.hpp"

namespace fracwave {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& value, const std::string& key, int line) {
  char* end = nullptr;
  const double parsed = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("config: key '" + key + "' expects a number, got '" +
                          value + "' (line " + std::to_string(line) + ")",
                      key, line);
  return parsed;
}

int to_int(const std::string& value, const std::string& key, int line) {
  char* end = nullptr;
  const long parsed = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || parsed < INT32_MIN ||
      parsed > INT32_MAX)
    throw ConfigError("config: key '" + key + "' expects an integer, got '" +
                          value + "' (line " + std::to_string(line) + ")",
                      key, line);
  return static_cast<int>(parsed);
}

std::uint64_t to_u64(const std::string& value, const std::string& key,
                     int line) {
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError("config: key '" + key +
                          "' expects a nonnegative integer, got '" + value +
                          "' (line " + std::to_string(line) + ")",
                      key, line);
  return static_cast<std::uint64_t>(parsed);
}

struct FieldDef {
  const char* section;
  const char* key;
  std::function<void(RunConfig&, const std::string&, int)> set;
  std::function<std::string(const RunConfig&)> get;
};

FieldDef field(const char* section, const char* key, double RunConfig::*mem) {
  return {section, key,
          [mem, key](RunConfig& c, const std::string& v, int line) {
            c.*mem = to_double(v, key, line);
          },
          [mem](const RunConfig& c) { return g17(c.*mem); }};
}

FieldDef field(const char* section, const char* key, int RunConfig::*mem) {
  return {section, key,
          [mem, key](RunConfig& c, const std::string& v, int line) {
            c.*mem = to_int(v, key, line);
          },
          [mem](const RunConfig& c) { return std::to_string(c.*mem); }};
}

FieldDef field(const char* section, const char* key,
               std::uint64_t RunConfig::*mem) {
  return {section, key,
          [mem, key](RunConfig& c, const std::string& v, int line) {
            c.*mem = to_u64(v, key, line);
          },
          [mem](const RunConfig& c) { return std::to_string(c.*mem); }};
}

FieldDef field(const char* section, const char* key,
               std::string RunConfig::*mem) {
  return {section, key,
          [mem](RunConfig& c, const std::string& v, int) { c.*mem = v; },
          [mem](const RunConfig& c) { return c.*mem; }};
}

const std::vector<FieldDef>& registry() {
  static const std::vector<FieldDef> defs = {
      field("physics", "c", &RunConfig::c),
      field("physics", "b", &RunConfig::b),
      field("physics", "alpha", &RunConfig::alpha),
      field("physics", "k", &RunConfig::k),
      field("mesh", "dimension", &RunConfig::dimension),
      field("mesh", "xmin", &RunConfig::xmin),
      field("mesh", "xmax", &RunConfig::xmax),
      field("mesh", "nx", &RunConfig::nx),
      field("mesh", "ymin", &RunConfig::ymin),
      field("mesh", "ymax", &RunConfig::ymax),
      field("mesh", "ny", &RunConfig::ny),
      field("time", "horizon", &RunConfig::horizon),
      field("time", "steps", &RunConfig::steps),
      field("objective", "nu", &RunConfig::nu),
      field("objective", "gamma", &RunConfig::gamma),
      field("objective", "eta", &RunConfig::eta),
      field("objective", "target", &RunConfig::target),
      field("objective", "roi", &RunConfig::roi),
      field("admissible", "g_radius", &RunConfig::g_radius),
      field("admissible", "f_radius", &RunConfig::f_radius),
      field("admissible", "w_value", &RunConfig::w_value),
      field("admissible", "w_frac", &RunConfig::w_frac),
      field("admissible", "w_velocity", &RunConfig::w_velocity),
      field("admissible", "w_accel", &RunConfig::w_accel),
      field("controls", "g_amplitude", &RunConfig::g_amplitude),
      field("controls", "g_frequency", &RunConfig::g_frequency),
      field("controls", "f_amplitude", &RunConfig::f_amplitude),
      field("solver", "mode", &RunConfig::mode),
      field("solver", "tol", &RunConfig::tol),
      field("solver", "max_iter", &RunConfig::max_iter),
      field("solver", "a_lower", &RunConfig::a_lower),
      field("solver", "a_upper", &RunConfig::a_upper),
      field("optimizer", "max_iter", &RunConfig::opt_max_iter),
      field("optimizer", "tol", &RunConfig::opt_tol),
      field("optimizer", "c1", &RunConfig::armijo_c1),
      field("optimizer", "shrink", &RunConfig::shrink),
      field("optimizer", "step0", &RunConfig::step0),
      field("optimizer", "max_backtracks", &RunConfig::max_backtracks),
      field("conditioning", "epsilon", &RunConfig::epsilon),
      field("conditioning", "r", &RunConfig::bump_r),
      field("conditioning", "R", &RunConfig::bump_R),
      field("conditioning", "rate", &RunConfig::rate),
      field("run", "scenario", &RunConfig::scenario),
      field("run", "study", &RunConfig::study),
      field("run", "seed", &RunConfig::seed),
      field("run", "out", &RunConfig::out),
  };
  return defs;
}

void check_choice(const std::string& value, const char* key,
                  const std::set<std::string>& allowed) {
  if (allowed.count(value) == 0) {
    std::string msg = "config: key '";
    msg += key;
    msg += "' has unsupported value '" + value + "'; expected one of";
    for (const auto& a : allowed) msg += " '" + a + "'";
    throw ConfigError(msg, key, 0);
  }
}

void require(bool ok, const char* key, const char* what) {
  if (!ok)
    throw ConfigError(std::string("config: key '") + key + "' " + what, key, 0);
}

void validate_semantics(const RunConfig& c) {
  require(c.c > 0.0, "c", "must be positive");
  require(c.b >= 0.0, "b", "must be nonnegative");
  require(c.alpha > 0.0 && c.alpha < 1.0, "alpha", "must lie in (0,1)");
  require(c.dimension == 1 || c.dimension == 2, "dimension", "must be 1 or 2");
  require(c.xmax > c.xmin, "xmax", "must exceed xmin");
  require(c.nx >= 2, "nx", "must be at least 2");
  if (c.dimension == 2) {
    require(c.ymax > c.ymin, "ymax", "must exceed ymin");
    require(c.ny >= 2, "ny", "must be at least 2");
  }
  require(c.horizon > 0.0, "horizon", "must be positive");
  require(c.steps >= 2, "steps", "must be at least 2");
  require(c.nu == 0.0 || c.nu == 1.0, "nu", "must be 0 or 1");
  require(c.gamma >= 0.0, "gamma", "must be nonnegative");
  require(c.eta >= 0.0, "eta", "must be nonnegative");
  check_choice(c.roi, "roi", {"all", "left-half"});
  if (c.target.rfind("file:", 0) == 0) {
    require(c.target.size() > 5, "target", "file: needs a path");
  } else {
    check_choice(c.target, "target", {"zero", "attainable"});
  }
  require(c.g_radius > 0.0, "g_radius", "must be positive");
  require(c.f_radius > 0.0, "f_radius", "must be positive");
  require(c.w_value > 0.0, "w_value", "must be positive");
  require(c.w_frac > 0.0, "w_frac", "must be positive");
  require(c.w_velocity > 0.0, "w_velocity", "must be positive");
  require(c.w_accel > 0.0, "w_accel", "must be positive");
  check_choice(c.mode, "mode", {"global", "per-step"});
  require(c.tol > 0.0, "tol", "must be positive");
  require(c.max_iter >= 1, "max_iter", "must be positive");
  require(c.a_lower > 0.0 && c.a_upper > c.a_lower, "a_lower",
          "must satisfy 0 < a_lower < a_upper");
  require(c.opt_max_iter >= 1, "max_iter", "must be positive");
  require(c.opt_tol > 0.0, "tol", "must be positive");
  require(c.armijo_c1 > 0.0 && c.armijo_c1 < 1.0, "c1", "must lie in (0,1)");
  require(c.shrink > 0.0 && c.shrink < 1.0, "shrink", "must lie in (0,1)");
  require(c.step0 > 0.0, "step0", "must be positive");
  require(c.max_backtracks >= 0, "max_backtracks", "must be nonnegative");
  require(c.epsilon >= 0.0, "epsilon", "must be nonnegative");
  require(c.bump_r > 0.0 && c.bump_R > c.bump_r, "R",
          "must satisfy 0 < r < R");
  require(c.rate >= 0.0, "rate", "must be nonnegative");
  check_choice(c.scenario, "scenario", {"zero", "pulse", "manufactured"});
  check_choice(c.study, "study", {"none", "perturbation", "vanishing-reg"});
  require(!c.out.empty(), "out", "must not be empty");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::map<std::string, const FieldDef*> lookup;
  std::set<std::string> known_sections;
  for (const auto& def : registry()) {
    lookup[std::string(def.section) + "." + def.key] = &def;
    known_sections.insert(def.section);
  }

  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: unterminated section header (line " +
                              std::to_string(line_no) + ")",
                          line, line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (known_sections.count(section) == 0)
        throw ConfigError("config: unknown section '" + section + "' (line " +
                              std::to_string(line_no) + ")",
                          section, line_no);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value (line " +
                            std::to_string(line_no) + ")",
                        line, line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("config: key '" + key + "' outside any section (line " +
                            std::to_string(line_no) + ")",
                        key, line_no);
    const std::string qualified = section + "." + key;
    const auto it = lookup.find(qualified);
    if (it == lookup.end())
      throw ConfigError("config: unknown key '" + qualified + "' (line " +
                            std::to_string(line_no) + ")",
                        qualified, line_no);
    if (!seen.insert(qualified).second)
      throw ConfigError("config: duplicate key '" + qualified + "' (line " +
                            std::to_string(line_no) + ")",
                        qualified, line_no);
    it->second->set(config, value, line_no);
  }

  validate_semantics(config);
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'", path, 0);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const auto& def : registry()) {
    if (section != def.section) {
      if (!section.empty()) out << '\n';
      section = def.section;
      out << '[' << section << "]\n";
    }
    out << def.key << " = " << def.get(config) << '\n';
  }
  return out.str();
}

SpaceMesh RunConfig::make_mesh() const {
  if (dimension == 1) return SpaceMesh::interval(xmin, xmax, nx);
  return SpaceMesh::rectangle(xmin, xmax, ymin, ymax, nx, ny);
}

TimeGrid RunConfig::make_grid() const {
  return TimeGrid{horizon / steps, steps};
}

PhysicsParams RunConfig::make_physics(const SpaceMesh& mesh) const {
  PhysicsParams p;
  p.c = c;
  p.b = b;
  p.alpha = FracOrder{alpha};
  p.T = horizon;
  if (k != 0.0) p.k = Vec::Constant(mesh.n_nodes(), k);
  return p;
}

AdmissibleSpec RunConfig::make_admissible() const {
  AdmissibleSpec spec;
  spec.g_radius = g_radius;
  spec.f_radius = f_radius;
  spec.w_value = w_value;
  spec.w_frac = w_frac;
  spec.w_velocity = w_velocity;
  spec.w_accel = w_accel;
  return spec;
}

FixedPointOptions RunConfig::make_fixed_point() const {
  FixedPointOptions fp;
  fp.max_iter = max_iter;
  fp.tol = tol;
  fp.mode = (mode == "per-step") ? FixedPointOptions::Mode::PerStepFrozen
                                 : FixedPointOptions::Mode::Global;
  return fp;
}

SolveOptions RunConfig::make_solve_options() const {
  SolveOptions opts;
  opts.a_lower = a_lower;
  opts.a_upper = a_upper;
  return opts;
}

OptimizerOptions RunConfig::make_optimizer() const {
  OptimizerOptions opts;
  opts.max_iterations = opt_max_iter;
  opts.stationarity_tol = opt_tol;
  opts.armijo_c1 = armijo_c1;
  opts.shrink = shrink;
  opts.initial_step = step0;
  opts.max_backtracks = max_backtracks;
  return opts;
}

ConditioningParams RunConfig::make_conditioning(double dt) const {
  ConditioningParams params;
  params.epsilon = (epsilon > 0.0) ? epsilon : 4.0 * dt;
  params.r = bump_r;
  params.R = bump_R;
  params.correction_rate = rate;
  return params;
}

}  // namespace fracwave
