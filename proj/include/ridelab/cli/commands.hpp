#pragma once

#include <iosfwd>
#include <string>

#include "ridelab/cli/config.hpp"

namespace ridelab::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNumericFailure = 2,
  kOracleMismatch = 3,
};

struct CommandOutput {
  std::string csv;
  int exit_code = kOk;
};

// Each command returns its CSV (header + rows, LF line endings, floats with
// 10 significant digits). Sweep points are evaluated on up to `threads`
// threads; rows always come out in sweep order.

// beta, phi_star_exact, mr_exact, phi_star_limit, mr_limit
CommandOutput cmd_monopoly(const RunConfig& cfg, int threads);

// e_over_lambda, outcome_kind, phi1, phi2, cycle_lo, cycle_hi, mr1, mr2,
// then threshold and monopoly-reference columns.
CommandOutput cmd_duopoly(const RunConfig& cfg, char metric, int threads);

// Analytic vs simulated D / B / MR per parameter set; exit 3 unless all pass.
CommandOutput cmd_simulate(const RunConfig& cfg, int threads);

// Grid check of both equilibrium-cycle conditions on [lo, hi] under the
// limit-system payoff for `metric`; exit 3 unless both hold.
CommandOutput cmd_cycle_verify(const RunConfig& cfg, double lo, double hi, char metric);

// Full command-line entry point (subcommand parsing, --config, --out,
// --seed, RIDE_LAB_THREADS). Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Thread cap from RIDE_LAB_THREADS, falling back to hardware concurrency.
int thread_budget();

std::string format_number(double v);

}  // namespace ridelab::cli
