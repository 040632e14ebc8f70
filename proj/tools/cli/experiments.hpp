#pragma once

#include <ostream>

#include "report.hpp"
#include "run_config.hpp"

namespace qlga::cli {

/// Runs the configured experiment. Library errors propagate.
Report run_experiment(const RunConfig& config);

enum ExitCode { Ok = 0, Failure = 1, BadConfig = 2, NumericalGuard = 3 };

/// Runs and writes the report (to config.output, or `out` when empty).
/// Errors are printed to `err` and mapped to exit codes.
int run_and_write(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace qlga::cli
