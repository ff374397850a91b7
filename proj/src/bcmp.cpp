#include "ridelab/bcmp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ridelab/errors.hpp"
#include "summation.hpp"

namespace ridelab {

double StationaryDistribution::weight(std::size_t n) const {
  return n < log_weights.size() ? std::exp(log_weights[n]) : 0.0;
}

double StationaryDistribution::normalizer() const { return std::exp(log_normalizer); }

double StationaryDistribution::waiting(std::size_t n) const {
  return n < probabilities.size() ? probabilities[n] : 0.0;
}

double StationaryDistribution::joint(std::size_t n, std::size_t r) const {
  if (riding_mean == 0.0) return r == 0 ? waiting(n) : 0.0;
  const double log_poisson = -riding_mean + static_cast<double>(r) * std::log(riding_mean) -
                             std::lgamma(static_cast<double>(r) + 1.0);
  return waiting(n) * std::exp(log_poisson);
}

double StationaryDistribution::busy_mass() const {
  detail::CompensatedSum s;
  for (std::size_t n = 1; n < probabilities.size(); ++n) s.add(probabilities[n]);
  return s.value();
}

StationaryDistribution stationary_waiting_distribution(const PlatformParams& params,
                                                       const PricePolicy& policy,
                                                       const ResponseFunction& rf,
                                                       double lambda,
                                                       const SeriesOptions& opts) {
  if (params.beta() == 0.0) {
    throw UnsupportedRegime(
        "exact product-form evaluation needs beta > 0; use the limit-system functions for "
        "beta = 0");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("passenger rate lambda must be finite and >= 0");
  }
  policy.check(rf.phi_h());

  const double e = params.e();
  const double beta = params.beta();

  StationaryDistribution dist;
  dist.riding_mean = e / params.nu();
  dist.log_weights.push_back(0.0);

  double tail_log = -INFINITY;
  if (e > 0.0) {
    const double log_e = std::log(e);
    const double log_tol = std::log(opts.tail_tolerance);
    // Past this level the ratio e / (lambda f + n beta) is non-increasing in n,
    // so the remaining terms are dominated by a geometric series.
    const std::size_t monotone_from = policy.uniform() ? 0 : policy.explicit_levels();
    auto acceptance_rate = [&](std::size_t n) { return lambda * rf.value(policy.at(n)); };

    double log_sum = 0.0;
    double lw = 0.0;
    for (std::size_t n = 1;; ++n) {
      const double denom = acceptance_rate(n) + static_cast<double>(n) * beta;
      lw += log_e - std::log(denom);
      dist.log_weights.push_back(lw);
      log_sum = detail::log_add_exp(log_sum, lw);

      if (n >= monotone_from) {
        const double next = static_cast<double>(n + 1);
        const double ratio = e / (acceptance_rate(n + 1) + next * beta);
        if (ratio < 1.0) {
          const double bound = lw + std::log(ratio) - std::log1p(-ratio);
          if (bound - log_sum < log_tol) {
            tail_log = bound;
            break;
          }
        }
      }
      if (n >= opts.max_terms) {
        throw TruncationOverflow("product-form series did not converge within " +
                                 std::to_string(opts.max_terms) + " terms");
      }
    }
  }

  const double top = *std::max_element(dist.log_weights.begin(), dist.log_weights.end());
  detail::CompensatedSum scaled;
  for (double v : dist.log_weights) scaled.add(std::exp(v - top));
  dist.log_normalizer = top + std::log(scaled.value());
  dist.probabilities.reserve(dist.log_weights.size());
  for (double v : dist.log_weights) dist.probabilities.push_back(std::exp(v - dist.log_normalizer));
  dist.truncation = dist.log_weights.size() - 1;
  dist.tail_bound = std::exp(tail_log - dist.log_normalizer);
  return dist;
}

namespace {

PlatformMetrics metrics_from(const StationaryDistribution& dist, const PricePolicy& policy,
                             const ResponseFunction& rf, double lambda) {
  PlatformMetrics out;
  out.D = dist.probabilities.front();
  if (policy.uniform()) {
    const double phi = policy.uniform_price();
    const double f = rf.value(phi);
    out.B = (1.0 - f) + f * out.D;
    out.MR = lambda * f * phi * dist.busy_mass();
    return out;
  }
  detail::CompensatedSum declined;
  detail::CompensatedSum revenue;
  for (std::size_t n = 1; n < dist.probabilities.size(); ++n) {
    const double phi = policy.at(n);
    const double f = rf.value(phi);
    declined.add((1.0 - f) * dist.probabilities[n]);
    revenue.add(lambda * f * phi * dist.probabilities[n]);
  }
  out.B = out.D + declined.value();
  out.MR = revenue.value();
  return out;
}

}  // namespace

PlatformMetrics platform_metrics(const PlatformParams& params, const PricePolicy& policy,
                                 const ResponseFunction& rf, double lambda) {
  const auto dist = stationary_waiting_distribution(params, policy, rf, lambda);
  return metrics_from(dist, policy, rf, lambda);
}

double driver_unavailability(const PlatformParams& params, const PricePolicy& policy,
                             const ResponseFunction& rf, double lambda) {
  return stationary_waiting_distribution(params, policy, rf, lambda).probabilities.front();
}

double blocking_probability(const PlatformParams& params, const PricePolicy& policy,
                            const ResponseFunction& rf, double lambda) {
  return platform_metrics(params, policy, rf, lambda).B;
}

double matching_revenue(const PlatformParams& params, const PricePolicy& policy,
                        const ResponseFunction& rf, double lambda) {
  return platform_metrics(params, policy, rf, lambda).MR;
}

}  // namespace ridelab
