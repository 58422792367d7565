#pragma once

#include <string>

#include "config.hpp"

namespace spingas::cli {

// Each command reads the validated config, runs the computation, and writes
// its artifacts into `output_dir` (created if missing).  Return value is the
// process exit code contribution: 0 on success, 3 when a per-row numerical
// failure was recorded (compare).  Hard failures are thrown:
// std::invalid_argument -> exit 2, QuadratureError/NumericalError -> exit 3.

int cmd_rates(const RunConfig& cfg, const std::string& output_dir,
              const Overrides& ov);

int cmd_evolve(const RunConfig& cfg, const std::string& output_dir,
               const Overrides& ov, const std::string& generator_flag);

int cmd_simulate(const RunConfig& cfg, const std::string& output_dir,
                 const Overrides& ov);

int cmd_compare(const RunConfig& cfg, const std::string& output_dir,
                const Overrides& ov);

int cmd_lamb_shift(const RunConfig& cfg, const std::string& output_dir,
                   const Overrides& ov);

} // namespace spingas::cli
