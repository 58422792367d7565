#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace spingas::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument("config: " + path + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (allowed.find(key) == allowed.end())
      fail(path, "unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const char* key,
                    const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_number(e, path));
  return out;
}

// Flat row-major array of [re, im] pairs -> n x n complex matrix.
Matrix as_matrix(const json& v, int n, const std::string& path) {
  if (!v.is_array() ||
      v.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    fail(path, "expected " + std::to_string(n * n) +
                   " row-major [re, im] pairs");
  Matrix m(n, n);
  for (int k = 0; k < n * n; ++k) {
    const json& pair = v[static_cast<std::size_t>(k)];
    if (!pair.is_array() || pair.size() != 2)
      fail(path, "entry " + std::to_string(k) + " is not an [re, im] pair");
    m(k / n, k % n) = cxd(as_number(pair[0], path), as_number(pair[1], path));
  }
  return m;
}

SpinModel parse_model(const json& j) {
  check_keys(j, {"dim_s", "dim_g", "h_s", "f", "mu"}, "model");
  SpinModel m;
  m.dim_s = as_int(require(j, "dim_s", "model"), "model.dim_s");
  m.dim_g = as_int(require(j, "dim_g", "model"), "model.dim_g");
  if (m.dim_s < 2) fail("model.dim_s", "must be >= 2");
  if (m.dim_g < 1) fail("model.dim_g", "must be >= 1");
  m.h_s = as_matrix(require(j, "h_s", "model"), m.dim_s, "model.h_s");
  m.f = as_matrix(require(j, "f", "model"), m.dim_s * m.dim_g, "model.f");
  const auto mu = as_number_list(require(j, "mu", "model"), "model.mu");
  if (mu.size() != static_cast<std::size_t>(m.dim_g))
    fail("model.mu", "expected " + std::to_string(m.dim_g) + " weights");
  m.mu = Eigen::Map<const Eigen::VectorXd>(mu.data(),
                                           static_cast<Eigen::Index>(
                                               mu.size()));
  return m;
}

RadialPotential parse_potential(const json& j,
                                const std::filesystem::path& base_dir) {
  check_keys(j, {"kind", "u", "table"}, "potential");
  const std::string kind = as_string(require(j, "kind", "potential"),
                                     "potential.kind");
  const double u = as_number(require(j, "u", "potential"), "potential.u");
  if (kind == "gaussian") {
    if (j.contains("table"))
      fail("potential.table", "only valid for kind 'tabulated'");
    return gaussian_potential(u);
  }
  if (kind == "squarewell") {
    if (j.contains("table"))
      fail("potential.table", "only valid for kind 'tabulated'");
    return squarewell_potential(u);
  }
  if (kind == "tabulated") {
    const std::string table = as_string(require(j, "table", "potential"),
                                        "potential.table");
    std::filesystem::path p(table);
    if (!p.is_absolute()) p = base_dir / p;
    return tabulated_from_csv(p.string(), u);
  }
  fail("potential.kind",
       "'" + kind + "' is not one of gaussian|squarewell|tabulated");
}

EvolveSpec parse_evolve(const json& j, int dim_s) {
  check_keys(j, {"rho0", "t_grid", "method", "generator", "lamb_order"},
             "evolve");
  EvolveSpec e;
  e.rho0 = as_matrix(require(j, "rho0", "evolve"), dim_s, "evolve.rho0");
  e.t_grid = as_number_list(require(j, "t_grid", "evolve"), "evolve.t_grid");
  if (e.t_grid.empty()) fail("evolve.t_grid", "must not be empty");
  for (std::size_t i = 0; i < e.t_grid.size(); ++i) {
    if (!(e.t_grid[i] >= 0.0)) fail("evolve.t_grid", "times must be >= 0");
    if (i > 0 && e.t_grid[i] < e.t_grid[i - 1])
      fail("evolve.t_grid", "times must be non-decreasing");
  }
  if (j.contains("method")) {
    const std::string m = as_string(j["method"], "evolve.method");
    if (m == "expm")
      e.method = EvolveMethod::Expm;
    else if (m == "rk_adaptive")
      e.method = EvolveMethod::RkAdaptive;
    else
      fail("evolve.method", "'" + m + "' is not one of expm|rk_adaptive");
  }
  if (j.contains("generator")) {
    e.generator = as_string(j["generator"], "evolve.generator");
    if (e.generator != "ldl" && e.generator != "cm")
      fail("evolve.generator", "'" + e.generator + "' is not one of ldl|cm");
  }
  if (j.contains("lamb_order")) {
    e.lamb_order = as_int(j["lamb_order"], "evolve.lamb_order");
    if (e.lamb_order != 1 && e.lamb_order != 2)
      fail("evolve.lamb_order", "must be 1 or 2");
  }
  return e;
}

SimulateSpec parse_simulate(const json& j, int dim_s) {
  check_keys(j,
             {"rho0", "trajectories", "seed", "t_end", "sample_times",
              "tau_mode", "f_expect", "batches", "threads"},
             "simulate");
  SimulateSpec s;
  if (j.contains("rho0"))
    s.rho0 = as_matrix(j["rho0"], dim_s, "simulate.rho0");
  s.trajectories = as_int(require(j, "trajectories", "simulate"),
                          "simulate.trajectories");
  if (s.trajectories < 1) fail("simulate.trajectories", "must be >= 1");
  if (j.contains("seed")) {
    const json& v = j["seed"];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      fail("simulate.seed", "expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  s.t_end = as_number(require(j, "t_end", "simulate"), "simulate.t_end");
  if (!(s.t_end >= 0.0)) fail("simulate.t_end", "must be >= 0");
  s.sample_times = as_number_list(require(j, "sample_times", "simulate"),
                                  "simulate.sample_times");
  if (j.contains("tau_mode")) {
    const std::string m = as_string(j["tau_mode"], "simulate.tau_mode");
    if (m == "straight")
      s.tau_mode = TauMode::Straight;
    else if (m == "refracted")
      s.tau_mode = TauMode::Refracted;
    else
      fail("simulate.tau_mode",
           "'" + m + "' is not one of straight|refracted");
  }
  if (j.contains("f_expect"))
    s.f_expect = as_number(j["f_expect"], "simulate.f_expect");
  if (j.contains("batches")) {
    s.batches = as_int(j["batches"], "simulate.batches");
    if (s.batches < 1) fail("simulate.batches", "must be >= 1");
  }
  if (j.contains("threads")) {
    s.threads = as_int(j["threads"], "simulate.threads");
    if (s.threads < 1) fail("simulate.threads", "must be >= 1");
  }
  return s;
}

SweepSpec parse_sweep(const json& j) {
  check_keys(j, {"theta_grid"}, "sweep");
  SweepSpec s;
  s.theta_grid = as_number_list(require(j, "theta_grid", "sweep"),
                                "sweep.theta_grid");
  for (std::size_t i = 0; i < s.theta_grid.size(); ++i) {
    if (!(s.theta_grid[i] > 0.0))
      fail("sweep.theta_grid", "temperatures must be > 0");
    if (i > 0 && s.theta_grid[i] <= s.theta_grid[i - 1])
      fail("sweep.theta_grid", "temperatures must be strictly ascending");
  }
  return s;
}

LambSpec parse_lamb(const json& j) {
  check_keys(j, {"order"}, "lamb");
  LambSpec l;
  if (j.contains("order")) {
    l.order = as_int(j["order"], "lamb.order");
    if (l.order != 1 && l.order != 2) fail("lamb.order", "must be 1 or 2");
  }
  return l;
}

} // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: not an object");
  check_keys(doc, {"model", "potential", "gas", "evolve", "simulate", "sweep",
                   "lamb"},
             "(top level)");

  RunConfig cfg;
  cfg.model = parse_model(require(doc, "model", "(top level)"));
  cfg.potential =
      parse_potential(require(doc, "potential", "(top level)"),
                      std::filesystem::path(path).parent_path());

  const json& gas = require(doc, "gas", "(top level)");
  check_keys(gas, {"nu", "theta"}, "gas");
  cfg.gas.nu = as_number(require(gas, "nu", "gas"), "gas.nu");
  cfg.gas.theta = as_number(require(gas, "theta", "gas"), "gas.theta");
  cfg.gas.u = cfg.potential.u;  // single source of strength

  if (doc.contains("evolve"))
    cfg.evolve = parse_evolve(doc["evolve"], cfg.model.dim_s);
  if (doc.contains("simulate"))
    cfg.simulate = parse_simulate(doc["simulate"], cfg.model.dim_s);
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc["sweep"]);
  if (doc.contains("lamb")) cfg.lamb = parse_lamb(doc["lamb"]);

  validate(cfg.model);
  validate(cfg.gas);
  return cfg;
}

} // namespace spingas::cli
