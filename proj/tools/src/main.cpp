#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

using namespace spingas;
using namespace spingas::cli;

// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 validity-regime hard violation under --strict.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kRegimeError = 4;

struct CommonOpts {
  std::string config_path;
  std::string output_dir = ".";
  bool strict = false;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--config", opts.config_path, "JSON config file")
      ->required();
  sub->add_option("--output", opts.output_dir,
                  "output directory (created if missing)");
  sub->add_flag("--strict", opts.strict,
                "fail (exit 4) when outside the dilute/fast/Born regime");
}

// Hard regime gate for --strict: the generators assume a dilute gas
// (nu << 1), fast particles (theta >> 1), and weak coupling (|u| << sqrt
// theta); violating any of these by an order of one invalidates the model.
bool regime_violated(const GasParameters& gas, std::string* why) {
  if (gas.dilute_ratio() >= 1.0) {
    *why = "dilute_ratio nu = " + std::to_string(gas.dilute_ratio()) +
           " >= 1";
    return true;
  }
  if (gas.theta <= 1.0) {
    *why = "theta = " + std::to_string(gas.theta) + " <= 1";
    return true;
  }
  if (gas.born_ratio() >= 1.0) {
    *why = "born_ratio |u|/sqrt(theta) = " +
           std::to_string(gas.born_ratio()) + " >= 1";
    return true;
  }
  return false;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-gas master-equation toolkit: collision-driven GKSL "
               "generators, propagation, and stochastic cross-validation"};
  app.require_subcommand(1);

  CommonOpts rates_opts, evolve_opts, simulate_opts, compare_opts, lamb_opts;
  std::string generator_flag;
  long long seed_flag = 0;
  int trajectories_flag = 0;
  int threads_flag = 0;

  CLI::App* rates =
      app.add_subcommand("rates", "generator coefficients and diagnostics");
  add_common(rates, rates_opts);

  CLI::App* evolve_cmd =
      app.add_subcommand("evolve", "propagate a density matrix on a t-grid");
  add_common(evolve_cmd, evolve_opts);
  evolve_cmd
      ->add_option("--generator", generator_flag,
                   "generator to build: ldl or cm")
      ->check(CLI::IsMember({"ldl", "cm"}));

  CLI::App* simulate =
      app.add_subcommand("simulate", "stochastic collision ensemble");
  add_common(simulate, simulate_opts);
  simulate->add_option("--seed", seed_flag, "random seed override")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--trajectories", trajectories_flag,
                       "trajectory count override")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--threads", threads_flag,
                       "worker thread cap (never changes results)")
      ->check(CLI::PositiveNumber);

  CLI::App* compare =
      app.add_subcommand("compare", "LDL vs CM temperature sweep");
  add_common(compare, compare_opts);

  CLI::App* lamb =
      app.add_subcommand("lamb-shift", "Lamb-shift matrices from both routes");
  add_common(lamb, lamb_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  const CommonOpts* opts = nullptr;
  if (rates->parsed()) opts = &rates_opts;
  if (evolve_cmd->parsed()) opts = &evolve_opts;
  if (simulate->parsed()) opts = &simulate_opts;
  if (compare->parsed()) opts = &compare_opts;
  if (lamb->parsed()) opts = &lamb_opts;

  try {
    RunConfig cfg = load_config(opts->config_path);

    if (opts->strict) {
      std::string why;
      if (regime_violated(cfg.gas, &why)) {
        std::fprintf(stderr, "error: outside validity regime: %s\n",
                     why.c_str());
        return kRegimeError;
      }
    }

    Overrides ov;
    if (simulate->parsed() && cfg.simulate) {
      if (simulate->count("--seed") > 0) {
        cfg.simulate->seed = static_cast<std::uint64_t>(seed_flag);
        ov.applied["seed"] = std::to_string(seed_flag);
      }
      if (simulate->count("--trajectories") > 0) {
        cfg.simulate->trajectories = trajectories_flag;
        ov.applied["trajectories"] = std::to_string(trajectories_flag);
      }
      // --threads is applied but never recorded: byte-identical outputs.
      if (simulate->count("--threads") > 0)
        cfg.simulate->threads = threads_flag;
    }
    if (evolve_cmd->parsed() && !generator_flag.empty())
      ov.applied["generator"] = generator_flag;

    if (rates->parsed())
      return cmd_rates(cfg, opts->output_dir, ov);
    if (evolve_cmd->parsed())
      return cmd_evolve(cfg, opts->output_dir, ov, generator_flag);
    if (simulate->parsed())
      return cmd_simulate(cfg, opts->output_dir, ov);
    if (compare->parsed())
      return cmd_compare(cfg, opts->output_dir, ov);
    if (lamb->parsed())
      return cmd_lamb_shift(cfg, opts->output_dir, ov);
  } catch (const QuadratureError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalError;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumericalError;
  }
  return kOk;
}
