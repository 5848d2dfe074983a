#include "smq/run_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace smq::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) fail(where, "unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where + "." + key, "must be finite");
  return x;
}

std::int64_t get_integer(const json& obj, const char* key, const std::string& where,
                         std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_unsigned(const json& obj, const char* key, const std::string& where,
                           std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) fail(where + "." + key, "must be nonnegative");
  fail(where + "." + key, "expected a nonnegative integer");
}

StateEntry parse_state(const json& obj, const std::string& where, const std::filesystem::path& base_dir) {
  check_keys(obj, where, {"kind", "label", "omega", "mass", "hbar", "center", "level", "p0",
                          "separation", "relative_sign", "amplitude_ratio", "chirp", "file"});
  if (!obj.contains("kind") || !obj.at("kind").is_string()) fail(where, "'kind' must be a string");
  const auto name = obj.at("kind").get<std::string>();
  const auto kind = parse_state_kind(name);
  if (!kind) {
    fail(where + ".kind", "unknown kind '" + name +
                              "' (gaussian_ground, harmonic_excited, boosted_gaussian, two_gaussian, "
                              "chirped_gaussian, tabulated)");
  }
  StateEntry entry;
  StateSpec& s = entry.spec;
  s.kind = *kind;
  s.omega = get_number(obj, "omega", where, s.omega);
  s.mass = get_number(obj, "mass", where, s.mass);
  s.hbar = get_number(obj, "hbar", where, s.hbar);
  s.center = get_number(obj, "center", where, s.center);
  s.level = static_cast<int>(get_integer(obj, "level", where, s.level));
  s.p0 = get_number(obj, "p0", where, s.p0);
  s.separation = get_number(obj, "separation", where, s.separation);
  s.relative_sign = static_cast<int>(get_integer(obj, "relative_sign", where, s.relative_sign));
  s.amplitude_ratio = get_number(obj, "amplitude_ratio", where, s.amplitude_ratio);
  s.chirp = get_number(obj, "chirp", where, s.chirp);
  if (obj.contains("label")) {
    if (!obj.at("label").is_string()) fail(where + ".label", "expected a string");
    entry.label = obj.at("label").get<std::string>();
  }
  if (s.kind == StateKind::tabulated) {
    if (!obj.contains("file") || !obj.at("file").is_string()) {
      fail(where, "tabulated kind needs a 'file' string");
    }
    entry.file = obj.at("file").get<std::string>();
    std::filesystem::path p(*entry.file);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    try {
      auto tab = load_tabulated_state(p);
      s.mass = tab.mass;
      s.hbar = tab.hbar;
      s.tabulated = std::make_shared<const TabulatedState>(std::move(tab));
    } catch (const std::exception& e) {
      fail(where + ".file", e.what());
    }
  } else if (obj.contains("file")) {
    fail(where + ".file", "only the tabulated kind reads a file");
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return entry;
}

std::vector<LambdaAtom> parse_lambda(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() != "canonical") fail("lambda", "expected \"canonical\" or {\"atoms\": [...]}");
    return {};
  }
  check_keys(v, "lambda", {"atoms"});
  if (!v.contains("atoms") || !v.at("atoms").is_array() || v.at("atoms").empty()) {
    fail("lambda.atoms", "expected a non-empty array");
  }
  std::vector<LambdaAtom> atoms;
  std::size_t i = 0;
  for (const auto& a : v.at("atoms")) {
    const std::string where = "lambda.atoms[" + std::to_string(i++) + "]";
    check_keys(a, where, {"magnitude", "weight"});
    if (!a.contains("magnitude") || !a.contains("weight")) fail(where, "needs magnitude and weight");
    atoms.push_back({get_number(a, "magnitude", where, 0.0), get_number(a, "weight", where, 0.0)});
  }
  try {
    LambdaDistribution check(atoms);
  } catch (const std::invalid_argument& e) {
    fail("lambda", e.what());
  }
  return atoms;
}

SweepSettings parse_sweep(const json& v) {
  check_keys(v, "sweep", {"parameter", "values"});
  if (!v.contains("parameter") || !v.at("parameter").is_string()) fail("sweep.parameter", "expected a string");
  SweepSettings s;
  const auto p = v.at("parameter").get<std::string>();
  if (p == "a" || p == "slit_width") {
    s.parameter = SweepParameter::slit_width;
  } else if (p == "lambda_atoms") {
    s.parameter = SweepParameter::lambda_atoms;
  } else if (p == "q0") {
    s.parameter = SweepParameter::q0;
  } else {
    fail("sweep.parameter", "unknown parameter '" + p + "' (slit_width, lambda_atoms, q0)");
  }
  if (!v.contains("values") || !v.at("values").is_array() || v.at("values").empty()) {
    fail("sweep.values", "expected a non-empty array of numbers");
  }
  for (const auto& x : v.at("values")) {
    if (!x.is_number() || !std::isfinite(x.get<double>())) fail("sweep.values", "expected finite numbers");
    s.values.push_back(x.get<double>());
  }
  for (double x : s.values) {
    if (s.parameter == SweepParameter::slit_width && !(x > 0.0)) fail("sweep.values", "a must be positive");
    if (s.parameter == SweepParameter::lambda_atoms && !(x >= 0.0 && x < 1.0)) {
      fail("sweep.values", "lambda_atoms spread must lie in [0, 1)");
    }
  }
  return s;
}

void assign_labels(std::vector<StateEntry>& states) {
  std::map<std::string, int> seen;
  for (const auto& e : states) {
    if (!e.label.empty()) ++seen[e.label];
  }
  for (const auto& [label, count] : seen) {
    if (count > 1) fail("states", "duplicate label '" + label + "'");
  }
  std::map<std::string, int> used;
  for (auto& e : states) {
    if (!e.label.empty()) continue;
    const std::string base = to_string(e.spec.kind);
    std::string candidate = base;
    int k = used[base]++;
    if (k > 0) candidate = base + "_" + std::to_string(k);
    while (seen.count(candidate)) candidate = base + "_" + std::to_string(++k);
    seen[candidate] = 1;
    e.label = candidate;
  }
}

json grid_json(const Grid1D& g) {
  return {{"q_min", g.q_min()}, {"q_max", g.q_max()}, {"n_points", g.size()}};
}

}  // namespace

const char* to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::slit_width: return "a";
    case SweepParameter::lambda_atoms: return "lambda_atoms";
    case SweepParameter::q0: return "q0";
  }
  return "?";
}

LambdaDistribution RunConfig::lambda_for(const StateEntry& entry) const {
  if (!lambda_atoms) return LambdaDistribution::canonical(entry.spec.hbar);
  return LambdaDistribution(*lambda_atoms);
}

StateSpec RunConfig::resolved_spec(const StateEntry& entry) const {
  StateSpec spec = entry.spec;
  if (grid_q_min) {
    spec.grid = Grid1D(*grid_q_min, *grid_q_max, grid_points.value_or(kDefaultGridPoints));
  } else {
    const Grid1D base = default_grid(spec, lambda_for(entry));
    spec.grid = grid_points ? Grid1D(base.q_min(), base.q_max(), *grid_points) : base;
  }
  return spec;
}

ModelState RunConfig::build_state(const StateEntry& entry) const {
  try {
    return build(resolved_spec(entry), lambda_for(entry), floor_factor);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("state '" + entry.label + "': " + e.what());
  }
}

RunConfig parse_run_config(const json& doc, const Overrides& overrides,
                           const std::filesystem::path& base_dir) {
  check_keys(doc, "top level", {"state", "states", "lambda", "grid", "tolerance",
                                "quantum_potential_tolerance", "mean_zero_tolerance",
                                "floor_factor", "q0", "montecarlo", "sweep", "output_dir"});
  RunConfig c;

  if (doc.contains("state") == doc.contains("states")) fail("top level", "give exactly one of 'state' or 'states'");
  if (doc.contains("state")) {
    c.states.push_back(parse_state(doc.at("state"), "state", base_dir));
  } else {
    const json& arr = doc.at("states");
    if (!arr.is_array() || arr.empty()) fail("states", "expected a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      c.states.push_back(parse_state(arr[i], "states[" + std::to_string(i) + "]", base_dir));
    }
  }
  assign_labels(c.states);

  if (doc.contains("lambda")) {
    auto atoms = parse_lambda(doc.at("lambda"));
    if (!atoms.empty()) c.lambda_atoms = std::move(atoms);
  }

  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    check_keys(g, "grid", {"q_min", "q_max", "n_points"});
    if (g.contains("q_min") != g.contains("q_max")) fail("grid", "q_min and q_max go together");
    if (g.contains("q_min")) {
      c.grid_q_min = get_number(g, "q_min", "grid", 0.0);
      c.grid_q_max = get_number(g, "q_max", "grid", 0.0);
    }
    if (g.contains("n_points")) c.grid_points = get_unsigned(g, "n_points", "grid", 0);
  }
  if (overrides.grid_points) c.grid_points = overrides.grid_points;
  if (c.grid_points && *c.grid_points < 16) fail("grid.n_points", "must be at least 16");
  if (c.grid_q_min && !(*c.grid_q_max > *c.grid_q_min)) fail("grid", "q_max must exceed q_min");

  c.tolerances.relative = get_number(doc, "tolerance", "top level", c.tolerances.relative);
  if (overrides.tolerance) c.tolerances.relative = *overrides.tolerance;
  c.tolerances.quantum_potential =
      get_number(doc, "quantum_potential_tolerance", "top level", c.tolerances.quantum_potential);
  c.tolerances.mean_zero = get_number(doc, "mean_zero_tolerance", "top level", c.tolerances.mean_zero);
  if (!(c.tolerances.relative > 0.0) || !(c.tolerances.quantum_potential > 0.0) ||
      !(c.tolerances.mean_zero > 0.0)) {
    fail("tolerance", "tolerances must be positive");
  }
  c.floor_factor = get_number(doc, "floor_factor", "top level", c.floor_factor);
  if (!(c.floor_factor > 0.0 && c.floor_factor < 1.0)) fail("floor_factor", "must lie in (0, 1)");

  if (doc.contains("q0")) {
    const json& q = doc.at("q0");
    if (q.is_string()) {
      if (q.get<std::string>() != "mean") fail("q0", "expected \"mean\" or a number");
    } else {
      c.q0 = get_number(doc, "q0", "top level", 0.0);
    }
  }

  if (doc.contains("montecarlo")) {
    const json& m = doc.at("montecarlo");
    check_keys(m, "montecarlo", {"n", "seed", "bins"});
    c.montecarlo.n = get_unsigned(m, "n", "montecarlo", c.montecarlo.n);
    c.montecarlo.seed = get_unsigned(m, "seed", "montecarlo", c.montecarlo.seed);
    c.montecarlo.bins = get_unsigned(m, "bins", "montecarlo", c.montecarlo.bins);
  }
  if (overrides.seed) c.montecarlo.seed = *overrides.seed;
  if (c.montecarlo.n == 0) fail("montecarlo.n", "must be at least 1");
  if (c.montecarlo.bins < 10) fail("montecarlo.bins", "must be at least 10");

  if (doc.contains("sweep")) c.sweep = parse_sweep(doc.at("sweep"));

  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string()) fail("output_dir", "expected a string");
    c.out_dir = doc.at("output_dir").get<std::string>();
  }
  if (overrides.out_dir) c.out_dir = *overrides.out_dir;
  if (overrides.threads) {
    if (*overrides.threads == 0) fail("threads", "must be at least 1");
    c.threads = *overrides.threads;
  }

  // Every state must resolve to a grid before anything runs.
  for (const auto& e : c.states) {
    try {
      (void)c.resolved_spec(e);
    } catch (const std::invalid_argument& ex) {
      fail("state '" + e.label + "'", ex.what());
    }
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc, overrides, path.parent_path());
}

nlohmann::ordered_json resolved_config_json(const RunConfig& c) {
  nlohmann::ordered_json out;
  nlohmann::ordered_json states = nlohmann::ordered_json::array();
  for (const auto& e : c.states) {
    const StateSpec spec = c.resolved_spec(e);
    nlohmann::ordered_json s;
    s["label"] = e.label;
    s["kind"] = to_string(spec.kind);
    s["mass"] = spec.mass;
    s["hbar"] = spec.hbar;
    switch (spec.kind) {
      case StateKind::gaussian_ground:
        s["omega"] = spec.omega;
        s["center"] = spec.center;
        break;
      case StateKind::harmonic_excited:
        s["omega"] = spec.omega;
        s["center"] = spec.center;
        s["level"] = spec.level;
        break;
      case StateKind::boosted_gaussian:
        s["omega"] = spec.omega;
        s["center"] = spec.center;
        s["p0"] = spec.p0;
        break;
      case StateKind::two_gaussian:
        s["omega"] = spec.omega;
        s["center"] = spec.center;
        s["separation"] = spec.separation;
        s["relative_sign"] = spec.relative_sign;
        s["amplitude_ratio"] = spec.amplitude_ratio;
        break;
      case StateKind::chirped_gaussian:
        s["omega"] = spec.omega;
        s["center"] = spec.center;
        s["chirp"] = spec.chirp;
        break;
      case StateKind::tabulated:
        s["file"] = e.file.value_or("");
        s["normalization_correction"] = spec.tabulated->normalization_correction;
        break;
    }
    const json g = grid_json(*spec.grid);
    s["grid"] = nlohmann::ordered_json{{"q_min", g["q_min"]}, {"q_max", g["q_max"]}, {"n_points", g["n_points"]}};
    states.push_back(std::move(s));
  }
  out["states"] = std::move(states);
  if (c.lambda_atoms) {
    nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
    const LambdaDistribution lambda(*c.lambda_atoms);  // sorted, validated copy
    for (const auto& a : lambda.atoms()) {
      atoms.push_back({{"magnitude", a.magnitude}, {"weight", a.weight}});
    }
    out["lambda"] = {{"atoms", std::move(atoms)}};
  } else {
    out["lambda"] = "canonical";
  }
  out["tolerance"] = c.tolerances.relative;
  out["quantum_potential_tolerance"] = c.tolerances.quantum_potential;
  out["mean_zero_tolerance"] = c.tolerances.mean_zero;
  out["floor_factor"] = c.floor_factor;
  if (c.q0) {
    out["q0"] = *c.q0;
  } else {
    out["q0"] = "mean";
  }
  out["montecarlo"] = {{"n", c.montecarlo.n}, {"seed", c.montecarlo.seed}, {"bins", c.montecarlo.bins}};
  if (c.sweep) {
    out["sweep"] = {{"parameter", to_string(c.sweep->parameter)}, {"values", c.sweep->values}};
  }
  return out;
}

}  // namespace smq::cli
