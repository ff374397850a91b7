#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ridelab/platform.hpp"
#include "ridelab/response.hpp"

namespace ridelab {

struct SimConfig {
  std::uint64_t seed = 1;
  double horizon = 1e5;
  // Negative means 10% of the horizon.
  double warmup = -1.0;
  int replications = 1;
  int batches = 20;
  // Replications run on up to this many threads; results do not depend on it.
  int threads = 1;

  double effective_warmup() const { return warmup < 0.0 ? 0.1 * horizon : warmup; }
};

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // batch-means standard error
};

struct SimEstimates {
  Estimate D;       // fraction of arrivals finding no waiting driver
  Estimate B;       // fraction of arrivals leaving without a ride
  Estimate MR;      // revenue per unit time
  Estimate D_time;  // time-average of {no waiting driver}
  long long passenger_count = 0;
  long long match_count = 0;
};

// Next-event simulation of one platform's (waiting, riding) driver chain.
// Starts empty, discards the warmup window, and splits the rest of each
// replication into equal batches for standard errors. Each replication draws
// from its own stream seeded by (seed, replication index), so results are
// reproducible bit-for-bit and independent of the thread count.
//
// Throws DomainError on an invalid config and InsufficientData when no
// passenger arrives after warmup.
SimEstimates simulate_platform(const PlatformParams& params, const PricePolicy& policy,
                               const ResponseFunction& rf, double lambda, const SimConfig& cfg);

// Seed for the index-th of several independent simulation runs sharing one
// configured seed. Runs that reuse a single seed see the same random stream
// and their errors move together; deriving one seed per run avoids that.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// One static-price parameter set for simulation-vs-analytic comparison.
struct OracleCase {
  PlatformParams params;
  double price = 0.0;
  double lambda = 0.0;
};

// Deterministic random battery: beta in [0.1, 2], nu in [0.5, 2], p in
// [0, 0.7], eta in [0.2, 1.5], lambda in [0.3, 3], price in [0, phi_h].
std::vector<OracleCase> random_oracle_cases(std::uint64_t seed, int count, double phi_h);

struct OracleCheck {
  double D = 0.0;  // analytic
  double B = 0.0;
  double MR = 0.0;
  SimEstimates sim;
  bool D_pass = false;
  bool B_pass = false;
  bool MR_pass = false;
  // "ok", "mismatch" or "insufficient_data".
  std::string status;

  bool passed() const { return D_pass && B_pass && MR_pass; }
};

// Runs the simulator on one case and compares each metric with the
// product-form value at `sigmas` standard errors.
OracleCheck check_against_analytic(const OracleCase& c, const ResponseFunction& rf,
                                   const SimConfig& cfg, double sigmas = 3.0);

}  // namespace ridelab
