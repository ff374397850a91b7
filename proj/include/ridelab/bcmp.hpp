#pragma once

#include <cstddef>
#include <vector>

#include "ridelab/platform.hpp"
#include "ridelab/response.hpp"

namespace ridelab {

// Waiting-driver marginal of the product-form stationary law of one platform.
//
// Unnormalized weights follow
//   w_0 = 1,  w_n = w_{n-1} * e / (lambda f(phi(n)) + n beta),
// and the riding-driver count is an independent Poisson(e / nu). Weights can
// span hundreds of orders of magnitude, so they are held as logarithms and
// only normalized probabilities are materialized.
struct StationaryDistribution {
  std::vector<double> log_weights;    // log w_n, n = 0..truncation
  std::vector<double> probabilities;  // w_n / normalizer
  double log_normalizer = 0.0;        // log sum_n w_n
  double riding_mean = 0.0;           // e / nu
  double tail_bound = 0.0;            // bound on truncated mass / normalizer
  std::size_t truncation = 0;

  double weight(std::size_t n) const;
  double normalizer() const;
  // P(N = n); zero beyond the truncation level.
  double waiting(std::size_t n) const;
  // P(N = n, R = r).
  double joint(std::size_t n, std::size_t r) const;
  // P(N >= 1), summed directly rather than as 1 - P(N = 0).
  double busy_mass() const;
};

struct SeriesOptions {
  // Stop once the geometric tail bound drops below this fraction of the sum.
  double tail_tolerance = 1e-16;
  std::size_t max_terms = 1'000'000;
};

// Throws UnsupportedRegime when beta = 0 (use the limit module), DomainError
// on negative lambda or prices outside [0, phi_h], TruncationOverflow when
// the series has not converged by max_terms.
StationaryDistribution stationary_waiting_distribution(const PlatformParams& params,
                                                       const PricePolicy& policy,
                                                       const ResponseFunction& rf,
                                                       double lambda,
                                                       const SeriesOptions& opts = {});

// Probability an arriving passenger finds no waiting driver.
double driver_unavailability(const PlatformParams& params, const PricePolicy& policy,
                             const ResponseFunction& rf, double lambda);

// Probability an arriving passenger leaves without a ride.
double blocking_probability(const PlatformParams& params, const PricePolicy& policy,
                            const ResponseFunction& rf, double lambda);

// Long-run revenue rate from completed matches.
double matching_revenue(const PlatformParams& params, const PricePolicy& policy,
                        const ResponseFunction& rf, double lambda);

struct PlatformMetrics {
  double D = 0.0;
  double B = 0.0;
  double MR = 0.0;
};

// All three metrics from a single series evaluation.
PlatformMetrics platform_metrics(const PlatformParams& params, const PricePolicy& policy,
                                 const ResponseFunction& rf, double lambda);

}  // namespace ridelab
