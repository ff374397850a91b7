#include "ridelab/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ridelab/bcmp.hpp"
#include "ridelab/errors.hpp"
#include "ridelab/limit.hpp"
#include "ridelab/model.hpp"
#include "ridelab/optimize.hpp"
#include "ridelab/wardrop.hpp"

namespace ridelab {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void check_game_inputs(const ResponseFunction& rf, double e, double Lambda, double phi_h) {
  if (!(e > 0.0) || !(Lambda > 0.0)) throw DomainError("need e > 0 and Lambda > 0");
  if (!(phi_h > 0.0 && phi_h <= rf.phi_h())) {
    throw DomainError("price cap must lie in (0, rf.phi_h()]");
  }
}

// Relative slack separating a genuine strict improvement from rounding noise.
bool strictly_better(double candidate, double base) {
  return candidate - base > 1e-12 * std::max(1.0, std::abs(base));
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double h = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) g[k] = (k == n - 1) ? hi : lo + k * h;
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

PriceOptimum monopoly_optimum_limit(const ResponseFunction& rf, double e, double Lambda) {
  const double lambda = 0.5 * Lambda;
  const double phi = std::min(std::max(argmax_P(rf), phi_underbar(rf, e, Lambda)), rf.phi_h());
  return {phi, limit_MR_single(e, lambda, phi, rf)};
}

PriceOptimum monopoly_optimum_exact(const PlatformParams& params, const ResponseFunction& rf,
                                    const ExactOptimumOptions& opts) {
  if (params.beta() <= 0.0) {
    throw UnsupportedRegime("monopoly_optimum_exact needs beta > 0");
  }
  const double lambda = 0.5 * params.Lambda();
  auto mr = [&](double phi) {
    return matching_revenue(params, PricePolicy::fixed(phi), rf, lambda);
  };
  GoldenOptions g;
  g.grid_points = opts.grid_points;
  g.tol = opts.tol;
  const ScalarMax best = maximize_golden(mr, 0.0, rf.phi_h(), g);
  return {best.x, best.value};
}

CooperationComparison compare_cooperation(const PlatformParams& params,
                                          const ResponseFunction& rf,
                                          const ExactOptimumOptions& opts) {
  // Merged platform: all Lambda passengers (so 2 Lambda in the half-share
  // convention) and both driver pools.
  const PlatformParams merged(2.0 * params.Lambda(), 2.0 * params.eta(), params.p(), params.nu(),
                              params.beta(), params.phi_h());
  CooperationComparison out;
  out.monopoly = monopoly_optimum_exact(params, rf, opts);
  out.merged = monopoly_optimum_exact(merged, rf, opts);
  out.merged.mr *= 0.5;
  out.price_gap = (out.merged.phi - out.monopoly.phi) / out.monopoly.phi;
  out.mr_gap = (out.merged.mr - out.monopoly.mr) / out.monopoly.mr;
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::NashPoint: return "nash_point";
    case OutcomeKind::EquilibriumCycle: return "equilibrium_cycle";
    case OutcomeKind::EpsilonNE: return "epsilon_ne";
    case OutcomeKind::NoEquilibriumKnown: return "no_equilibrium_known";
  }
  return "unknown";
}

EquilibriumOutcome duopoly_D_equilibrium(const ResponseFunction& rf, double e, double Lambda,
                                         double phi_h) {
  check_game_inputs(rf, e, Lambda, phi_h);
  auto d = [&rf](double phi) { return d_objective(rf, phi); };

  EquilibriumOutcome out;
  out.kind = OutcomeKind::NashPoint;
  double ub = phi_underbar(rf, e, Lambda);
  double phi = 0.0;
  if (ub > phi_h * (1.0 + 1e-12)) {
    // Drivers are the binding constraint at every admissible price.
    phi = phi_h;
    out.branch_tag = "D:underbar_above_cap";
  } else {
    ub = std::min(ub, phi_h);
    if (d(ub) <= 0.0) {
      phi = ub;
      out.branch_tag = "D:case_i";
    } else if (d(phi_h) <= 0.0) {
      phi = bisect_decreasing(d, ub, phi_h);
      out.branch_tag = "D:case_ii";
    } else {
      phi = phi_h;
      out.branch_tag = "D:case_iii";
    }
  }
  out.phi1 = out.phi2 = phi;
  out.mr1 = out.mr2 = duopoly_D_payoff(e, Lambda, rf, phi, phi);
  return out;
}

EquilibriumOutcome duopoly_B_equilibrium(const ResponseFunction& rf, double e, double Lambda,
                                         double phi_h, double epsilon) {
  check_game_inputs(rf, e, Lambda, phi_h);
  EquilibriumOutcome out;

  if (e >= Lambda) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0 when e >= Lambda");
    // Lambda f(phi) phi <= Lambda phi < epsilon for every phi <= delta.
    const double delta = std::min(phi_h, (1.0 - 1e-6) * epsilon / Lambda);
    const auto o = limit_WE_MR_B(e, Lambda, rf, delta, delta);
    out.kind = OutcomeKind::EpsilonNE;
    out.phi1 = out.phi2 = delta;
    out.epsilon = epsilon;
    out.mr1 = o.mr1;
    out.mr2 = o.mr2;
    out.branch_tag = "B:epsilon_ne";
    return out;
  }

  const double ub = phi_underbar(rf, e, Lambda);
  const double bar = phi_bar(rf, e, Lambda);
  const double pm = argmax_m(rf, e, Lambda, phi_h);

  if (pm <= ub && ub <= phi_h) {
    const auto o = limit_WE_MR_B(e, Lambda, rf, ub, ub);
    out.kind = OutcomeKind::NashPoint;
    out.phi1 = out.phi2 = ub;
    out.mr1 = o.mr1;
    out.mr2 = o.mr2;
    out.branch_tag = "B:nash_underbar";
    return out;
  }
  if (ub < pm && pm <= std::min(phi_h, bar)) {
    const double hi = pm;
    const double lo = m_objective(rf, e, Lambda, hi) / e;
    const auto o = limit_WE_MR_B(e, Lambda, rf, hi, lo);
    out.kind = OutcomeKind::EquilibriumCycle;
    out.phi1 = lo;
    out.phi2 = hi;
    // Platform at the upper end keeps m(phi_U); the undercutter earns e phi_L.
    out.mr1 = o.mr1;
    out.mr2 = o.mr2;
    out.branch_tag = "B:equilibrium_cycle";
    return out;
  }

  out.kind = OutcomeKind::NoEquilibriumKnown;
  out.branch_tag = "B:none";
  const std::string pm_s = fmt(pm);
  const std::string ub_s = fmt(ub);
  if (!(pm <= ub)) out.failed_conditions.push_back("phi_m_star " + pm_s + " > phi_underbar " + ub_s);
  if (!(ub <= phi_h)) out.failed_conditions.push_back("phi_underbar " + ub_s + " > phi_h " + fmt(phi_h));
  if (!(ub < pm)) out.failed_conditions.push_back("phi_underbar " + ub_s + " >= phi_m_star " + pm_s);
  if (!(pm <= std::min(phi_h, bar))) {
    out.failed_conditions.push_back("phi_m_star " + pm_s + " > min(phi_h, phi_bar) " +
                                    fmt(std::min(phi_h, bar)));
  }
  return out;
}

// ---------------------------------------------------------------------------

PayoffMap limit_B_payoff(const ResponseFunction& rf, double e, double Lambda) {
  return [rf, e, Lambda](double phi1, double phi2) {
    const auto o = limit_WE_MR_B(e, Lambda, rf, phi1, phi2);
    return std::array<double, 2>{o.mr1, o.mr2};
  };
}

PayoffMap duopoly_D_payoff_map(const ResponseFunction& rf, double e, double Lambda) {
  return [rf, e, Lambda](double phi1, double phi2) {
    return std::array<double, 2>{duopoly_D_payoff(e, Lambda, rf, phi1, phi2),
                                 duopoly_D_payoff(e, Lambda, rf, phi2, phi1)};
  };
}

PayoffMap exact_B_payoff(const PlatformParams& params, const ResponseFunction& rf) {
  return [params, rf](double phi1, double phi2) {
    const auto split = we_B_exact(params, params, rf, phi1, phi2);
    return std::array<double, 2>{
        matching_revenue(params, PricePolicy::fixed(phi1), rf, split.lambda1),
        matching_revenue(params, PricePolicy::fixed(phi2), rf, split.lambda2)};
  };
}

DeviationCheck max_unilateral_gain(const PayoffMap& payoff, double phi1, double phi2,
                                   double phi_h, int grid_points,
                                   const std::vector<double>& extra) {
  std::vector<double> devs = uniform_grid(0.0, phi_h, std::max(grid_points, 2));
  for (double x : extra) {
    if (x >= 0.0 && x <= phi_h) devs.push_back(x);
  }
  const auto base = payoff(phi1, phi2);
  DeviationCheck out;
  out.best_gain = -INFINITY;
  for (double x : devs) {
    const double g0 = payoff(x, phi2)[0] - base[0];
    if (g0 > out.best_gain) out = {g0, 0, x};
    const double g1 = payoff(phi1, x)[1] - base[1];
    if (g1 > out.best_gain) out = {g1, 1, x};
  }
  return out;
}

CycleVerification verify_equilibrium_cycle(const PayoffMap& payoff, double lo, double hi,
                                            double phi_h, const CycleVerifyOptions& opts) {
  if (!(lo < hi)) throw DomainError("verify_equilibrium_cycle: need lo < hi");
  if (!(hi <= phi_h)) throw DomainError("verify_equilibrium_cycle: need hi <= phi_h");
  if (lo < 0.0) throw DomainError("verify_equilibrium_cycle: need lo >= 0");
  if (opts.grid_n < 50) throw DomainError("verify_equilibrium_cycle: grid_n must be >= 50");

  const std::vector<double> inside = uniform_grid(lo, hi, opts.grid_n);
  std::vector<double> devs = uniform_grid(lo, hi, std::max(opts.deviation_n, 2));
  devs.insert(devs.end(), inside.begin(), inside.end());
  for (double c : opts.candidates) {
    if (c >= lo && c <= hi) devs.push_back(c);
  }
  std::sort(devs.begin(), devs.end());
  devs.erase(std::unique(devs.begin(), devs.end()), devs.end());

  // Grid points within rounding distance of an end count as inside: an
  // endpoint computed as 2.9999999999999996 must not make 3 an outside price.
  const double margin = 1e-9 * std::max(1.0, hi - lo);
  std::vector<double> outside;
  for (double x : uniform_grid(0.0, phi_h, opts.grid_n)) {
    if (x < lo - margin || x > hi + margin) outside.push_back(x);
  }

  // Payoff of `player` when it plays `own` against `other`.
  auto value = [&payoff](int player, double own, double other) {
    return player == 0 ? payoff(own, other)[0] : payoff(other, own)[1];
  };
  auto improve = [&](int player, double own, double other) -> CycleWitness {
    const double base = value(player, own, other);
    for (double x : devs) {
      const double v = value(player, x, other);
      if (strictly_better(v, base)) return {player, own, other, x, v - base};
    }
    return {player, own, other, own, 0.0};
  };

  CycleVerification out;
  out.stability = true;
  for (int player = 0; player < 2; ++player) {
    for (double other : inside) {
      for (double own : outside) {
        ++out.stability_checked;
        const CycleWitness w = improve(player, own, other);
        if (w.gain <= 0.0) {
          out.stability = false;
          if (out.stability_failures.size() < opts.max_failures) out.stability_failures.push_back(w);
        } else if (!out.stability_sample) {
          out.stability_sample = w;
        }
      }
    }
  }

  out.cyclicity = true;
  for (double p1 : inside) {
    for (double p2 : inside) {
      ++out.cyclicity_checked;
      CycleWitness w = improve(0, p1, p2);
      if (w.gain <= 0.0) w = improve(1, p2, p1);
      if (w.gain <= 0.0) {
        out.cyclicity = false;
        if (out.cyclicity_failures.size() < opts.max_failures) out.cyclicity_failures.push_back(w);
      } else if (!out.cyclicity_sample) {
        out.cyclicity_sample = w;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(BrClassification c) {
  switch (c) {
    case BrClassification::Converged: return "converged";
    case BrClassification::Oscillating: return "oscillating";
    case BrClassification::MaxIterExceeded: return "max_iter_exceeded";
  }
  return "unknown";
}

double best_response(const std::function<double(double)>& own_payoff, double current,
                     double rival, const BrOptions& opts) {
  const double phi_h = opts.phi_h;
  const int n = std::max(opts.grid_points, 3);
  const double h = phi_h / (n - 1);

  double best_x = 0.0;
  double best_v = -INFINITY;
  int best_k = -1;
  for (int k = 0; k < n; ++k) {
    const double x = (k == n - 1) ? phi_h : k * h;
    const double v = own_payoff(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
      best_k = k;
    }
  }
  // Golden refinement around the best grid point. When the bracket contains
  // the rival's price it is split there: price-competition payoffs may jump at
  // equal prices, and a refined point hugging the rival's price from one side
  // is then an unattained supremum (an infinitesimal undercut), so it is
  // dropped in favour of the grid point.
  const double a = std::max(0.0, best_x - h);
  const double b = std::min(phi_h, best_x + h);
  const double at_rival = (rival >= 0.0 && rival <= phi_h) ? own_payoff(rival) : -INFINITY;
  auto refine = [&](double lo, double hi, bool check_jump) {
    if (!(hi > lo)) return;
    const ScalarMax r = golden_section(own_payoff, lo, hi, 1e-10);
    if (check_jump && std::abs(r.x - rival) < 1e-6 * h &&
        std::abs(r.value - at_rival) > 1e-9 * std::max(1.0, std::abs(at_rival))) {
      return;
    }
    if (r.value > best_v) {
      best_v = r.value;
      best_x = r.x;
    }
  };
  if (best_k >= 0) {
    if (rival > a && rival < b) {
      refine(a, rival, true);
      refine(rival, b, true);
    } else {
      refine(a, b, rival == a || rival == b);
    }
  }
  auto consider = [&](double x) {
    if (x < 0.0 || x > phi_h) return;
    const double v = own_payoff(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  };
  for (double c : opts.candidates) consider(c);
  consider(rival);

  const double base = own_payoff(current);
  return best_v > base + opts.gain_tol ? best_x : current;
}

BrResult best_response_dynamics(const PayoffMap& payoff, std::pair<double, double> init,
                                const BrOptions& opts) {
  if (!(opts.phi_h > 0.0)) throw DomainError("best_response_dynamics: phi_h must be > 0");
  if (opts.max_iter < 1) throw DomainError("best_response_dynamics: max_iter must be >= 1");

  BrResult out;
  out.trajectory.push_back(init);
  auto [p1, p2] = init;
  for (int round = 1; round <= opts.max_iter; ++round) {
    const double q1 = best_response([&](double x) { return payoff(x, p2)[0]; }, p1, p2, opts);
    const double q2 = best_response([&](double x) { return payoff(q1, x)[1]; }, p2, q1, opts);
    const bool still = std::abs(q1 - p1) < opts.tol && std::abs(q2 - p2) < opts.tol;
    p1 = q1;
    p2 = q2;
    out.trajectory.emplace_back(p1, p2);
    out.rounds = round;
    if (still) {
      out.classification = BrClassification::Converged;
      out.point = {p1, p2};
      out.window_lo = std::min(p1, p2);
      out.window_hi = std::max(p1, p2);
      return out;
    }
  }
  out.point = {p1, p2};

  // Tail = second half of the trajectory. It oscillates when both halves of
  // the tail come back near both ends of the tail's price range.
  const std::size_t total = out.trajectory.size();
  const std::size_t start = total / 2;
  auto range_of = [&](std::size_t from, std::size_t to) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t k = from; k < to; ++k) {
      lo = std::min({lo, out.trajectory[k].first, out.trajectory[k].second});
      hi = std::max({hi, out.trajectory[k].first, out.trajectory[k].second});
    }
    return std::pair<double, double>{lo, hi};
  };
  const auto [lo, hi] = range_of(start, total);
  out.window_lo = lo;
  out.window_hi = hi;
  const double width = hi - lo;
  const std::size_t mid = start + (total - start) / 2;
  const auto [lo_a, hi_a] = range_of(start, mid);
  const auto [lo_b, hi_b] = range_of(mid, total);
  const double near = 0.1 * width;
  const bool revisits = lo_a - lo <= near && hi - hi_a <= near && lo_b - lo <= near &&
                        hi - hi_b <= near;
  out.classification = (width > opts.tol && revisits && mid > start)
                           ? BrClassification::Oscillating
                           : BrClassification::MaxIterExceeded;
  return out;
}

}  // namespace ridelab
