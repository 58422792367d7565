#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spingas::cli {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out.push_back({m(i, j).real(), m(i, j).imag()});
  return out;
}

ordered_json overrides_json(const Overrides& ov) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : ov.applied) out[key] = value;
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("cannot open '" + path.string() +
                                "' for writing");
  out << body;
  if (!out)
    throw std::invalid_argument("failed writing '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const ordered_json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::filesystem::path prepare_output(const std::string& output_dir) {
  std::filesystem::path dir(output_dir.empty() ? "." : output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Sum_i mu_i A_ii: the operator multiplying every Lamb-shift coefficient.
Matrix weighted_diag_sum(const SpinModel& model) {
  const auto jumps = jump_operators(model);
  Matrix s = Matrix::Zero(model.dim_s, model.dim_s);
  for (int i = 0; i < model.dim_g; ++i)
    s += model.mu[i] * jumps[static_cast<std::size_t>(i * model.dim_g + i)];
  return s;
}

const char* kind_name(PotentialKind k) {
  switch (k) {
    case PotentialKind::Gaussian: return "gaussian";
    case PotentialKind::SquareWell: return "squarewell";
    case PotentialKind::Tabulated: return "tabulated";
  }
  return "?";
}

void matrix_columns(std::ostream& os, int dim, const char* prefix,
                    bool complex_pair) {
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l) {
      if (complex_pair)
        os << "," << prefix << "_" << k << "_" << l << "_re"
           << "," << prefix << "_" << k << "_" << l << "_im";
      else
        os << "," << prefix << "_" << k << "_" << l;
    }
}

void matrix_values(std::ostream& os, const Matrix& m) {
  for (Eigen::Index k = 0; k < m.rows(); ++k)
    for (Eigen::Index l = 0; l < m.cols(); ++l)
      os << "," << format_full(m(k, l).real()) << ","
         << format_full(m(k, l).imag());
}

} // namespace

// ---- rates ----

int cmd_rates(const RunConfig& cfg, const std::string& output_dir,
              const Overrides& ov) {
  const auto dir = prepare_output(output_dir);
  const LdlCoefficients ldl = ldl_coefficients(cfg.potential, cfg.gas);
  const CmCoefficients cm = cm_coefficients(cfg.potential, cfg.gas);
  const auto [hh, dd] = discrepancy_estimates(cfg.model, cfg.gas);

  ordered_json doc;
  doc["potential"] = {{"kind", kind_name(cfg.potential.kind)},
                      {"u", cfg.potential.u}};
  doc["gas"] = {{"nu", cfg.gas.nu}, {"theta", cfg.gas.theta}};
  doc["ldl"] = {{"gamma", ldl.gamma},
                {"gamma_closed", ldl.gamma_closed},
                {"correction_factor", ldl.correction_factor},
                {"lamb_coeff", ldl.lamb_coeff},
                {"error_scale", ldl_error_scale(cfg.gas)}};
  doc["cm"] = {{"c1", cm.c1},
               {"c1_closed", cm.c1_closed},
               {"c2", cm.c2},
               {"c2_closed", cm.c2_closed}};
  doc["ratio"] = (cm.c2 != 0.0)
                     ? ordered_json(ldl.gamma / cm.c2)
                     : ordered_json(nullptr);
  doc["regime"] = {{"dilute_ratio", cfg.gas.dilute_ratio()},
                   {"fast_ratio", cfg.gas.fast_ratio()},
                   {"born_ratio", cfg.gas.born_ratio()}};
  doc["discrepancy"] = {{"lamb_scale", hh}, {"dissipator_scale", dd}};
  doc["overrides"] = overrides_json(ov);
  write_json(dir / "rates.json", doc);
  return 0;
}

// ---- evolve ----

int cmd_evolve(const RunConfig& cfg, const std::string& output_dir,
               const Overrides& ov, const std::string& generator_flag) {
  if (!cfg.evolve)
    throw std::invalid_argument("evolve: config has no 'evolve' block");
  const EvolveSpec& spec = *cfg.evolve;
  const std::string generator =
      !generator_flag.empty() ? generator_flag : spec.generator;
  if (generator.empty())
    throw std::invalid_argument(
        "evolve: generator not set (config evolve.generator or --generator)");
  if (generator != "ldl" && generator != "cm")
    throw std::invalid_argument("evolve: generator must be ldl or cm");

  const auto dir = prepare_output(output_dir);

  double rate = 0.0;
  Matrix lamb;
  std::string warning;
  if (generator == "ldl") {
    rate = gamma_quadrature(cfg.potential, cfg.gas);
    lamb = lamb_shift_ldl(cfg.model, cfg.potential, cfg.gas, spec.lamb_order,
                          &warning);
  } else {
    if (spec.lamb_order != 1)
      throw std::invalid_argument(
          "evolve: lamb_order 2 requires generator ldl");
    rate = cm_c2(cfg.potential, cfg.gas);
    lamb = cm_c1(cfg.potential, cfg.gas) * weighted_diag_sum(cfg.model);
  }
  const GkslGenerator gen = build_generator(cfg.model, lamb, rate);

  DensityMatrix rho0;
  rho0.rho = spec.rho0;
  validate(rho0);

  std::ostringstream csv;
  csv << "t";
  matrix_columns(csv, cfg.model.dim_s, "rho", true);
  csv << "\n";

  if (spec.method == EvolveMethod::Expm) {
    // Per-point propagation from t = 0: rows are independent of grid layout.
    for (double t : spec.t_grid) {
      const DensityMatrix r = evolve(gen, rho0, t, EvolveMethod::Expm);
      csv << format_full(t);
      matrix_values(csv, r.rho);
      csv << "\n";
    }
  } else {
    // Chained adaptive stepping between grid points.
    DensityMatrix cur = rho0;
    double t_cur = 0.0;
    for (double t : spec.t_grid) {
      cur = evolve(gen, cur, t - t_cur, EvolveMethod::RkAdaptive);
      t_cur = t;
      csv << format_full(t);
      matrix_values(csv, cur.rho);
      csv << "\n";
    }
  }
  write_text(dir / "trajectory.csv", csv.str());

  ordered_json meta;
  meta["generator"] = generator;
  meta["method"] =
      spec.method == EvolveMethod::Expm ? "expm" : "rk_adaptive";
  meta["rate"] = rate;
  meta["lamb_order"] = spec.lamb_order;
  meta["lamb_matrix"] = matrix_json(lamb);
  if (!warning.empty()) meta["warning"] = warning;
  meta["overrides"] = overrides_json(ov);
  write_json(dir / "evolve.json", meta);
  return 0;
}

// ---- simulate ----

int cmd_simulate(const RunConfig& cfg, const std::string& output_dir,
                 const Overrides& ov) {
  if (!cfg.simulate)
    throw std::invalid_argument("simulate: config has no 'simulate' block");
  const SimulateSpec& spec = *cfg.simulate;
  const auto dir = prepare_output(output_dir);

  SimConfig sim;
  sim.trajectories = spec.trajectories;
  sim.t_end = spec.t_end;
  sim.seed = spec.seed;
  sim.sample_times = spec.sample_times;
  sim.tau_mode = spec.tau_mode;
  sim.f_expect = spec.f_expect;
  sim.threads = spec.threads;
  sim.batches = spec.batches;

  DensityMatrix rho0;
  if (spec.rho0)
    rho0.rho = *spec.rho0;
  else if (cfg.evolve)
    rho0.rho = cfg.evolve->rho0;
  else
    throw std::invalid_argument(
        "simulate: no initial state (simulate.rho0 or evolve.rho0)");
  validate(rho0);

  const EnsembleResult res =
      run_ensemble(cfg.model, cfg.potential, cfg.gas, sim, rho0);

  std::ostringstream csv;
  csv << "t";
  matrix_columns(csv, cfg.model.dim_s, "rho", true);
  matrix_columns(csv, cfg.model.dim_s, "se", false);
  csv << ",se_scale\n";
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    csv << format_full(res.times[i]);
    matrix_values(csv, res.mean[i]);
    for (Eigen::Index k = 0; k < res.se[i].rows(); ++k)
      for (Eigen::Index l = 0; l < res.se[i].cols(); ++l)
        csv << "," << format_full(res.se[i](k, l));
    csv << "," << format_full(res.se_scale[i]) << "\n";
  }
  write_text(dir / "ensemble.csv", csv.str());

  // No timestamps and no thread count here: outputs must be byte-identical
  // for the same (config, seed) regardless of parallelism.
  ordered_json doc;
  doc["trajectories"] = sim.trajectories;
  doc["seed"] = sim.seed;
  doc["t_end"] = sim.t_end;
  doc["tau_mode"] =
      sim.tau_mode == TauMode::Straight ? "straight" : "refracted";
  doc["f_expect"] = sim.f_expect;
  doc["batches"] = sim.batches;
  doc["sample_times"] = res.times;
  doc["collision"] = {{"rate", res.collision_rate},
                      {"expected_mean", res.collision_rate * sim.t_end},
                      {"mean", res.collision_mean},
                      {"stddev", res.collision_stddev}};
  doc["stroboscopic_parameter"] = res.stroboscopic_parameter;
  doc["se_scale"] = res.se_scale;
  doc["overrides"] = overrides_json(ov);
  write_json(dir / "summary.json", doc);
  return 0;
}

// ---- compare ----

int cmd_compare(const RunConfig& cfg, const std::string& output_dir,
                const Overrides& ov) {
  if (!cfg.sweep)
    throw std::invalid_argument("compare: config has no 'sweep' block");
  const auto dir = prepare_output(output_dir);

  const auto records = temperature_sweep(cfg.potential, cfg.model, cfg.gas.nu,
                                         cfg.gas.u, cfg.sweep->theta_grid);

  std::ostringstream csv;
  csv << "theta,gamma_ldl,gamma_ldl_closed,c2_cm,ratio,lamb_ldl_coeff,"
         "lamb_cm_coeff,hh_estimate,dd_estimate,ok,error\n";
  bool any_failed = false;
  for (const auto& r : records) {
    if (!r.ok) any_failed = true;
    csv << format_full(r.theta) << "," << format_full(r.gamma_ldl) << ","
        << format_full(r.gamma_ldl_closed) << "," << format_full(r.c2_cm)
        << "," << format_full(r.ratio) << "," << format_full(r.lamb_ldl_coeff)
        << "," << format_full(r.lamb_cm_coeff) << ","
        << format_full(r.hh_estimate) << "," << format_full(r.dd_estimate)
        << "," << (r.ok ? 1 : 0) << "," << csv_quote(r.error) << "\n";
  }
  write_text(dir / "sweep.csv", csv.str());

  ordered_json doc;
  doc["potential"] = {{"kind", kind_name(cfg.potential.kind)},
                      {"u", cfg.potential.u}};
  doc["nu"] = cfg.gas.nu;
  doc["theta_grid"] = cfg.sweep->theta_grid;
  try {
    doc["fitted_ratio_constant"] = fitted_ratio_constant(records);
  } catch (const std::invalid_argument&) {
    doc["fitted_ratio_constant"] = nullptr;
  }
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json row;
    row["theta"] = r.theta;
    row["gamma_ldl"] = r.gamma_ldl;
    row["gamma_ldl_closed"] = r.gamma_ldl_closed;
    row["c2_cm"] = r.c2_cm;
    row["ratio"] = r.ratio;
    row["lamb_ldl_coeff"] = r.lamb_ldl_coeff;
    row["lamb_cm_coeff"] = r.lamb_cm_coeff;
    row["hh_estimate"] = r.hh_estimate;
    row["dd_estimate"] = r.dd_estimate;
    row["ok"] = r.ok;
    row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["overrides"] = overrides_json(ov);
  write_json(dir / "sweep.json", doc);
  return any_failed ? 3 : 0;
}

// ---- lamb-shift ----

int cmd_lamb_shift(const RunConfig& cfg, const std::string& output_dir,
                   const Overrides& ov) {
  const auto dir = prepare_output(output_dir);
  std::string warning;
  const Matrix hls_ldl = lamb_shift_ldl(cfg.model, cfg.potential, cfg.gas,
                                        cfg.lamb.order, &warning);
  const double ldl_coeff = cfg.gas.nu * volume_integral(cfg.potential);
  const double c1 = cm_c1(cfg.potential, cfg.gas);
  const Matrix hls_cm = c1 * weighted_diag_sum(cfg.model);

  const double denom = std::max(std::abs(c1), std::abs(ldl_coeff));
  const double rel_diff =
      denom > 0.0 ? std::abs(ldl_coeff - c1) / denom : 0.0;

  ordered_json doc;
  doc["order"] = cfg.lamb.order;
  doc["ldl"] = {{"coefficient", ldl_coeff}, {"matrix", matrix_json(hls_ldl)}};
  doc["cm"] = {{"coefficient", c1}, {"matrix", matrix_json(hls_cm)}};
  doc["relative_difference"] = rel_diff;
  if (!warning.empty()) doc["warning"] = warning;
  doc["overrides"] = overrides_json(ov);
  write_json(dir / "lamb.json", doc);
  return 0;
}

} // namespace spingas::cli
