#include "ridelab/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include "ridelab/bcmp.hpp"
#include "ridelab/errors.hpp"
#include "rng.hpp"

namespace ridelab {

namespace {

struct BatchTally {
  long long arrivals = 0;
  long long blocked_unavailable = 0;
  long long blocked_total = 0;
  long long matches = 0;
  double revenue = 0.0;
  double idle_time = 0.0;  // time with no waiting driver
};

std::vector<BatchTally> run_replication(const PlatformParams& params, const PricePolicy& policy,
                                        const ResponseFunction& rf, double lambda,
                                        const SimConfig& cfg, std::uint64_t index) {
  detail::Xoshiro256 rng(detail::stream_seed(cfg.seed, index));
  const double horizon = cfg.horizon;
  const double warmup = cfg.effective_warmup();
  const int nb = cfg.batches;
  const double blen = (horizon - warmup) / nb;
  std::vector<BatchTally> batches(nb);

  auto batch_of = [&](double t) {
    return std::min(static_cast<int>((t - warmup) / blen), nb - 1);
  };
  // Credits [a, b) of idle time to the batches it overlaps.
  auto add_idle = [&](double a, double b) {
    a = std::max(a, warmup);
    b = std::min(b, horizon);
    while (a < b) {
      const int k = batch_of(a);
      const double end = (k == nb - 1) ? horizon : warmup + (k + 1) * blen;
      const double stop = std::min(b, end);
      batches[k].idle_time += stop - a;
      if (stop <= a) break;
      a = stop;
    }
  };

  const double eta = params.eta();
  const double beta = params.beta();
  const double nu = params.nu();
  const double p = params.p();

  double t = 0.0;
  long long n = 0;  // waiting drivers
  long long r = 0;  // riding / on break
  for (;;) {
    const double total = eta + lambda + static_cast<double>(n) * beta + static_cast<double>(r) * nu;
    if (total <= 0.0) {
      if (n == 0) add_idle(t, horizon);
      break;
    }
    const double t_next = t + rng.exponential(total);
    if (n == 0) add_idle(t, t_next);
    if (t_next > horizon) break;
    t = t_next;
    const bool counted = t >= warmup;
    BatchTally* tally = counted ? &batches[batch_of(t)] : nullptr;

    double x = rng.uniform() * total;
    if (x < eta) {
      ++n;
      continue;
    }
    x -= eta;
    if (x < lambda) {
      if (tally) ++tally->arrivals;
      if (n == 0) {
        if (tally) {
          ++tally->blocked_unavailable;
          ++tally->blocked_total;
        }
        continue;
      }
      const double phi = policy.at(static_cast<std::size_t>(n));
      if (rng.uniform() < rf.value_unchecked(phi)) {
        --n;
        ++r;
        if (tally) {
          ++tally->matches;
          tally->revenue += phi;
        }
      } else if (tally) {
        ++tally->blocked_total;
      }
      continue;
    }
    x -= lambda;
    if (x < static_cast<double>(n) * beta) {
      --n;
      ++r;
      continue;
    }
    // Ride or break completes.
    --r;
    if (rng.uniform() < p) ++n;
  }
  return batches;
}

Estimate ratio_estimate(const std::vector<BatchTally>& all, long long BatchTally::*num,
                        long long BatchTally::*den) {
  long long sn = 0;
  long long sd = 0;
  std::vector<double> ratios;
  for (const auto& b : all) {
    sn += b.*num;
    sd += b.*den;
    if (b.*den > 0) ratios.push_back(static_cast<double>(b.*num) / static_cast<double>(b.*den));
  }
  Estimate est;
  est.mean = sd > 0 ? static_cast<double>(sn) / static_cast<double>(sd) : 0.0;
  const auto k = ratios.size();
  if (k < 2) {
    est.se = INFINITY;
    return est;
  }
  double mean = 0.0;
  for (double v : ratios) mean += v;
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : ratios) ss += (v - mean) * (v - mean);
  est.se = std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
  return est;
}

Estimate rate_estimate(const std::vector<double>& values) {
  const auto k = values.size();
  Estimate est;
  for (double v : values) est.mean += v;
  est.mean /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  est.se = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k)) : INFINITY;
  return est;
}

}  // namespace

SimEstimates simulate_platform(const PlatformParams& params, const PricePolicy& policy,
                               const ResponseFunction& rf, double lambda, const SimConfig& cfg) {
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw DomainError("sim: horizon must be finite and > 0");
  }
  const double warmup = cfg.effective_warmup();
  if (!(warmup >= 0.0 && warmup < cfg.horizon)) throw DomainError("sim: need 0 <= warmup < horizon");
  if (cfg.replications < 1) throw DomainError("sim: replications must be >= 1");
  if (cfg.batches < 2) throw DomainError("sim: batches must be >= 2");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("sim: lambda must be >= 0");
  policy.check(rf.phi_h());

  const auto reps = static_cast<std::size_t>(cfg.replications);
  std::vector<std::vector<BatchTally>> results(reps);
  const auto threads = static_cast<std::size_t>(std::max(cfg.threads, 1));
  for (std::size_t start = 0; start < reps; start += threads) {
    const std::size_t stop = std::min(reps, start + threads);
    std::vector<std::future<std::vector<BatchTally>>> jobs;
    for (std::size_t i = start; i < stop; ++i) {
      jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                run_replication, std::cref(params), std::cref(policy),
                                std::cref(rf), lambda, std::cref(cfg), i));
    }
    for (std::size_t i = start; i < stop; ++i) results[i] = jobs[i - start].get();
  }

  std::vector<BatchTally> all;
  for (auto& rep : results) all.insert(all.end(), rep.begin(), rep.end());

  SimEstimates out;
  for (const auto& b : all) {
    out.passenger_count += b.arrivals;
    out.match_count += b.matches;
  }
  if (out.passenger_count == 0) {
    throw InsufficientData("sim: no passenger arrivals after warmup");
  }
  out.D = ratio_estimate(all, &BatchTally::blocked_unavailable, &BatchTally::arrivals);
  out.B = ratio_estimate(all, &BatchTally::blocked_total, &BatchTally::arrivals);

  const double blen = (cfg.horizon - warmup) / cfg.batches;
  std::vector<double> rates;
  std::vector<double> idle;
  rates.reserve(all.size());
  idle.reserve(all.size());
  for (const auto& b : all) {
    rates.push_back(b.revenue / blen);
    idle.push_back(b.idle_time / blen);
  }
  out.MR = rate_estimate(rates);
  out.D_time = rate_estimate(idle);
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // Salted so run seeds never coincide with replication stream seeds.
  return detail::stream_seed(seed ^ 0x6A09E667F3BCC909ULL, index);
}

std::vector<OracleCase> random_oracle_cases(std::uint64_t seed, int count, double phi_h) {
  detail::Xoshiro256 rng(detail::stream_seed(seed, 0xBA77E5ULL));
  auto draw = [&rng](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  std::vector<OracleCase> cases;
  cases.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    const double beta = draw(0.1, 2.0);
    const double nu = draw(0.5, 2.0);
    const double p = draw(0.0, 0.7);
    const double eta = draw(0.2, 1.5);
    const double lambda = draw(0.3, 3.0);
    const double price = draw(0.0, phi_h);
    cases.push_back({PlatformParams(2.0 * lambda, eta, p, nu, beta, phi_h), price, lambda});
  }
  return cases;
}

OracleCheck check_against_analytic(const OracleCase& c, const ResponseFunction& rf,
                                   const SimConfig& cfg, double sigmas) {
  const auto policy = PricePolicy::fixed(c.price);
  OracleCheck out;
  const auto metrics = platform_metrics(c.params, policy, rf, c.lambda);
  out.D = metrics.D;
  out.B = metrics.B;
  out.MR = metrics.MR;
  try {
    out.sim = simulate_platform(c.params, policy, rf, c.lambda, cfg);
  } catch (const InsufficientData&) {
    out.status = "insufficient_data";
    return out;
  }
  auto within = [sigmas](const Estimate& est, double truth) {
    return std::abs(est.mean - truth) <= sigmas * est.se;
  };
  out.D_pass = within(out.sim.D, out.D);
  out.B_pass = within(out.sim.B, out.B);
  out.MR_pass = within(out.sim.MR, out.MR);
  out.status = out.passed() ? "ok" : "mismatch";
  return out;
}

}  // namespace ridelab
