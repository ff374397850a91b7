#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ridelab/platform.hpp"
#include "ridelab/response.hpp"

namespace ridelab {

// ---------------------------------------------------------------------------
// Monopoly and cooperation

struct PriceOptimum {
  double phi = 0.0;
  double mr = 0.0;
};

// Optimal static price of a platform serving Lambda/2 in the beta -> 0 limit:
// max{argmax f(phi) phi, phi_underbar}, capped at phi_h.
PriceOptimum monopoly_optimum_limit(const ResponseFunction& rf, double e, double Lambda);

struct ExactOptimumOptions {
  int grid_points = 64;
  double tol = 1e-8;
};

// Maximizes the exact matching revenue at lambda = Lambda/2 over [0, phi_h].
PriceOptimum monopoly_optimum_exact(const PlatformParams& params, const ResponseFunction& rf,
                                    const ExactOptimumOptions& opts = {});

// Half-share monopoly (Lambda/2, e) against the merged platform (Lambda, 2e)
// at the same beta. Gaps are relative to the monopoly values; the merged
// revenue is per original platform (halved).
struct CooperationComparison {
  PriceOptimum monopoly;
  PriceOptimum merged;  // mr already halved
  double price_gap = 0.0;
  double mr_gap = 0.0;
};

CooperationComparison compare_cooperation(const PlatformParams& params,
                                          const ResponseFunction& rf,
                                          const ExactOptimumOptions& opts = {});

// ---------------------------------------------------------------------------
// Two-player game outcomes

enum class OutcomeKind { NashPoint, EquilibriumCycle, EpsilonNE, NoEquilibriumKnown };

struct EquilibriumOutcome {
  OutcomeKind kind = OutcomeKind::NoEquilibriumKnown;
  // NashPoint: (phi1, phi2). EquilibriumCycle: (lo, hi). EpsilonNE: (delta, delta).
  double phi1 = 0.0;
  double phi2 = 0.0;
  double epsilon = 0.0;  // EpsilonNE only
  // Payoffs at the reported point, or with one platform at each cycle end.
  double mr1 = 0.0;
  double mr2 = 0.0;
  std::string branch_tag;
  // Branch conditions that failed; populated for NoEquilibriumKnown.
  std::vector<std::string> failed_conditions;

  double cycle_lo() const { return phi1; }
  double cycle_hi() const { return phi2; }
};

const char* to_string(OutcomeKind k);

// Symmetric duopoly under QoS D in the limit system. phi_h must not exceed
// rf.phi_h().
EquilibriumOutcome duopoly_D_equilibrium(const ResponseFunction& rf, double e, double Lambda,
                                         double phi_h);

// Symmetric duopoly under QoS B in the limit system. epsilon is used only in
// the e >= Lambda regime.
EquilibriumOutcome duopoly_B_equilibrium(const ResponseFunction& rf, double e, double Lambda,
                                         double phi_h, double epsilon);

// ---------------------------------------------------------------------------
// Payoff maps and numeric checks

// (phi1, phi2) -> (payoff of platform 1, payoff of platform 2).
using PayoffMap = std::function<std::array<double, 2>(double, double)>;

PayoffMap limit_B_payoff(const ResponseFunction& rf, double e, double Lambda);
PayoffMap duopoly_D_payoff_map(const ResponseFunction& rf, double e, double Lambda);
// Exact QoS-B game at beta > 0: Wardrop split by bisection on the product-form
// blocking curves, then exact matching revenues. Exploratory; much slower.
PayoffMap exact_B_payoff(const PlatformParams& params, const ResponseFunction& rf);

struct DeviationCheck {
  double best_gain = 0.0;  // max over players and grid of payoff(dev) - payoff(current)
  int player = 0;
  double best_deviation = 0.0;
};

// Largest unilateral gain at (phi1, phi2) over a uniform grid on [0, phi_h]
// plus any extra candidate prices.
DeviationCheck max_unilateral_gain(const PayoffMap& payoff, double phi1, double phi2,
                                   double phi_h, int grid_points,
                                   const std::vector<double>& extra = {});

struct CycleWitness {
  int player = 0;          // 0 or 1
  double phi_own = 0.0;    // price of the deviating (or stuck) player
  double phi_other = 0.0;
  double deviation = 0.0;  // improving price found, if any
  double gain = 0.0;
};

struct CycleVerification {
  bool stability = false;
  bool cyclicity = false;
  long stability_checked = 0;
  long cyclicity_checked = 0;
  // Points where no strict improvement inside [lo, hi] was found.
  std::vector<CycleWitness> stability_failures;
  std::vector<CycleWitness> cyclicity_failures;
  // First improving deviation found for each condition, for reporting.
  std::optional<CycleWitness> stability_sample;
  std::optional<CycleWitness> cyclicity_sample;

  bool passed() const { return stability && cyclicity; }
};

struct CycleVerifyOptions {
  int grid_n = 100;         // points per axis for the conditions
  int deviation_n = 400;    // deviation grid inside [lo, hi]
  std::vector<double> candidates;  // extra deviation prices (kept if inside [lo, hi])
  std::size_t max_failures = 16;
};

// Grid check of both equilibrium-cycle conditions for [lo, hi]:
// stability: every outside price against an inside rival is strictly beaten
// by some inside price; cyclicity: every inside profile lets some player
// strictly improve within the interval. Throws DomainError unless
// lo < hi <= phi_h and grid_n >= 50.
CycleVerification verify_equilibrium_cycle(const PayoffMap& payoff, double lo, double hi,
                                            double phi_h, const CycleVerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Best-response dynamics

enum class BrClassification { Converged, Oscillating, MaxIterExceeded };

struct BrOptions {
  int max_iter = 200;  // rounds; each round updates player 1 then player 2
  double tol = 1e-9;        // convergence: both prices move less than this
  double gain_tol = 1e-12;  // tie-keep: a move needs a payoff gain above this
  double phi_h = 0.0;       // required
  int grid_points = 400;
  std::vector<double> candidates;
};

struct BrResult {
  BrClassification classification = BrClassification::MaxIterExceeded;
  std::vector<std::pair<double, double>> trajectory;  // profile after each round, init first
  std::pair<double, double> point{0.0, 0.0};          // final profile
  double window_lo = 0.0;                             // tail price range
  double window_hi = 0.0;
  int rounds = 0;
};

// Best response of one player: grid scan plus candidates, golden refinement
// around the best grid point unless that bracket straddles the rival's price
// (where tie rules make price-competition payoffs jump). The current price
// is kept unless the improvement exceeds gain_tol.
double best_response(const std::function<double(double)>& own_payoff, double current,
                     double rival, const BrOptions& opts);

BrResult best_response_dynamics(const PayoffMap& payoff, std::pair<double, double> init,
                                const BrOptions& opts);

const char* to_string(BrClassification c);

}  // namespace ridelab
