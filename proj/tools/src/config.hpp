#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spingas/spingas.hpp"

namespace spingas::cli {

// ---- run configuration ----
//
// Single JSON document; unknown keys are rejected recursively so typos fail
// loudly instead of silently using defaults.  Matrices are flat row-major
// arrays of [re, im] pairs.  The interaction strength lives on the potential
// block and is copied into GasParameters at ingestion (single source).

struct EvolveSpec {
  Matrix rho0;
  std::vector<double> t_grid;
  EvolveMethod method = EvolveMethod::Expm;
  std::string generator;  // "ldl" | "cm"; may also come from --generator
  int lamb_order = 1;
};

struct SimulateSpec {
  std::optional<Matrix> rho0;  // falls back to evolve.rho0 when absent
  int trajectories = 1;
  std::uint64_t seed = 0;
  double t_end = 0.0;
  std::vector<double> sample_times;
  TauMode tau_mode = TauMode::Straight;
  double f_expect = 0.0;
  int batches = 256;
  int threads = 1;
};

struct SweepSpec {
  std::vector<double> theta_grid;
};

struct LambSpec {
  int order = 1;
};

struct RunConfig {
  SpinModel model;
  RadialPotential potential;
  GasParameters gas{};
  std::optional<EvolveSpec> evolve;
  std::optional<SimulateSpec> simulate;
  std::optional<SweepSpec> sweep;
  LambSpec lamb;
};

// Parses and validates the JSON config at `path`.  Tabulated potential CSVs
// are resolved relative to the config file's directory.  Throws
// std::invalid_argument with a descriptive message on any schema violation.
RunConfig load_config(const std::string& path);

// Flag overrides applied after load; keys that were actually overridden are
// recorded (key -> new value as text) for the output metadata.  The thread
// cap is deliberately never recorded: outputs must be byte-identical across
// thread counts.
struct Overrides {
  std::map<std::string, std::string> applied;
};

} // namespace spingas::cli
