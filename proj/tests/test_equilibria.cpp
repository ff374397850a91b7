#include <doctest.h>

#include <cmath>

#include "ridelab/bcmp.hpp"
#include "ridelab/equilibria.hpp"
#include "ridelab/errors.hpp"
#include "ridelab/limit.hpp"
#include "ridelab/model.hpp"
#include "test_support.hpp"

using namespace ridelab;
using doctest::Approx;

namespace {
const ResponseFunction kLinear = ResponseFunction::linear(0.1, 9.0);
}

TEST_CASE("monopoly optimum in the limit system") {
  const auto rf = ResponseFunction::linear(0.1, 9.0);
  const auto m = monopoly_optimum_limit(rf, 1.0, 7.0);
  CHECK(std::abs(m.phi - 50.0 / 7.0) < 1e-10);
  CHECK(m.mr == Approx(50.0 / 7.0).epsilon(1e-12));

  // e >= Lambda / 2: the driver pool is never binding, revenue peaks at argmax f phi.
  const auto loose = monopoly_optimum_limit(rf, 0.6, 1.0);
  CHECK(std::abs(loose.phi - 5.0) < 1e-8);
  CHECK(loose.mr == Approx(0.5 * 0.5 * 5.0).epsilon(1e-12));

  const auto sq = monopoly_optimum_limit(ResponseFunction::square(0.1, 9.0), 0.2, 1.0);
  CHECK(std::abs(sq.phi - 10.0 * std::sqrt(0.6)) < 1e-10);
}

TEST_CASE("exact monopoly optimum") {
  const auto pp = PlatformParams::from_effective(7.0, 1.0, 1.0, 1e-4, 9.0);
  const auto small = monopoly_optimum_exact(pp, kLinear);
  CHECK(std::abs(small.phi - 50.0 / 7.0) < 1e-2);

  // Fast abandonment: revenue ~ (lambda f phi) e / beta, maximized at argmax f phi = 5.
  const auto large = monopoly_optimum_exact(pp.with_beta(100.0), kLinear);
  CHECK(std::abs(large.phi - 5.0) < 5e-2);

  // A cap below phi_underbar = 50/7 makes revenue increasing on the whole range.
  const auto capped_rf = ResponseFunction::linear(0.1, 6.0);
  const auto capped_pp = PlatformParams::from_effective(7.0, 1.0, 1.0, 1e-3, 6.0);
  const auto capped = monopoly_optimum_exact(capped_pp, capped_rf);
  CHECK(capped.phi == Approx(6.0).epsilon(1e-8));
  CHECK(monopoly_optimum_limit(capped_rf, 1.0, 7.0).phi == 6.0);

  CHECK_THROWS_AS(monopoly_optimum_exact(pp.with_beta(0.0), kLinear), UnsupportedRegime);
}

TEST_CASE("exact optimum agrees with a grid oracle") {
  const auto pp = PlatformParams(3.0, 0.5, 0.2, 1.0, 0.4, 9.0);
  const auto best = monopoly_optimum_exact(pp, kLinear);
  double grid_best = 0.0;
  for (int i = 0; i <= 9000; ++i) {
    grid_best = std::max(grid_best, matching_revenue(pp, PricePolicy::fixed(i * 1e-3), kLinear, 1.5));
  }
  CHECK(best.mr >= grid_best - 1e-12);
  CHECK(best.mr == Approx(matching_revenue(pp, PricePolicy::fixed(best.phi), kLinear, 1.5)));
}

TEST_CASE("cooperation versus half-share monopoly") {
  const auto pp = PlatformParams::from_effective(7.0, 1.0, 1.0, 1.0, 9.0);
  const auto c = compare_cooperation(pp, kLinear);
  CHECK(c.merged.phi > 0.0);
  CHECK(std::abs(c.price_gap - std::abs(c.merged.phi - c.monopoly.phi) / c.monopoly.phi) < 1e-12);
  CHECK(c.price_gap == Approx(0.046).epsilon(0.02 / 0.046));
}

TEST_CASE("duopoly under D: the three branches") {
  const auto mid = duopoly_D_equilibrium(kLinear, 0.4, 1.0, 9.0);
  CHECK(mid.kind == OutcomeKind::NashPoint);
  CHECK(std::abs(mid.phi1 - 20.0 / 3.0) < 1e-10);
  CHECK(mid.phi2 == mid.phi1);
  CHECK(mid.mr1 == Approx(duopoly_D_payoff(0.4, 1.0, kLinear, mid.phi1, mid.phi2)));

  const auto scarce = duopoly_D_equilibrium(kLinear, 0.05, 1.0, 9.0);
  CHECK(scarce.kind == OutcomeKind::NashPoint);
  CHECK(scarce.phi1 == Approx(9.0).epsilon(1e-12));

  const auto flat_rf = ResponseFunction::linear(0.01, 9.0);
  const auto flat = duopoly_D_equilibrium(flat_rf, 0.4, 1.0, 9.0);
  CHECK(flat.kind == OutcomeKind::NashPoint);
  CHECK(flat.phi1 == 9.0);
  CHECK(flat.phi2 == 9.0);
  CHECK(mid.branch_tag != flat.branch_tag);
}

TEST_CASE("duopoly under B: cycle, Nash point and epsilon equilibrium") {
  const auto cyc = duopoly_B_equilibrium(kLinear, 0.4, 1.0, 9.0, 0.01);
  REQUIRE(cyc.kind == OutcomeKind::EquilibriumCycle);
  CHECK(std::abs(cyc.cycle_lo() - 2.25) < 1e-8);
  CHECK(std::abs(cyc.cycle_hi() - 3.0) < 1e-8);

  const auto cyc2 = duopoly_B_equilibrium(kLinear, 0.45, 1.0, 9.0, 0.01);
  REQUIRE(cyc2.kind == OutcomeKind::EquilibriumCycle);
  CHECK(std::abs(cyc2.cycle_lo() - 0.75625 / 0.45) < 1e-8);
  CHECK(std::abs(cyc2.cycle_lo() - 1.68056) < 1e-5);
  CHECK(std::abs(cyc2.cycle_hi() - 2.75) < 1e-8);

  const auto eps = duopoly_B_equilibrium(kLinear, 1.2, 1.0, 9.0, 0.01);
  REQUIRE(eps.kind == OutcomeKind::EpsilonNE);
  CHECK(eps.phi1 == Approx(0.01).epsilon(1e-5));
  CHECK(eps.phi1 < 0.01);
  CHECK(eps.epsilon == 0.01);
  const auto pay = limit_B_payoff(kLinear, 1.2, 1.0)(eps.phi1, eps.phi2);
  CHECK(pay[0] < 0.01);
  CHECK(pay[0] == Approx(0.5 * kLinear(eps.phi1) * eps.phi1));

  // Small e: phi_m_star <= phi_underbar, so the symmetric point is a Nash equilibrium.
  const auto ne = duopoly_B_equilibrium(kLinear, 0.1, 1.0, 9.0, 0.01);
  REQUIRE(ne.kind == OutcomeKind::NashPoint);
  CHECK(ne.phi1 == Approx(8.0).epsilon(1e-12));
}

TEST_CASE("duopoly under B: no known equilibrium is reported with reasons") {
  // Scarce drivers with a low cap: phi_underbar = 9.6 lies above phi_h = 9,
  // and phi_m_star < phi_underbar rules out the cycle branch.
  const auto rf = kLinear;
  const double e = 0.02;
  const auto t = thresholds(rf, e, 1.0);
  REQUIRE(t.phi_underbar > 9.0);
  REQUIRE(t.phi_m_star <= t.phi_underbar);
  const auto o = duopoly_B_equilibrium(rf, e, 1.0, 9.0, 0.01);
  CHECK(o.kind == OutcomeKind::NoEquilibriumKnown);
  CHECK_FALSE(o.failed_conditions.empty());
}

TEST_CASE("cycle verification") {
  const auto payoff = limit_B_payoff(kLinear, 0.4, 1.0);
  CycleVerifyOptions opts;
  opts.candidates = {2.0, 6.0, 3.0, 2.25};
  const auto ok = verify_equilibrium_cycle(payoff, 2.25, 3.0, 9.0, opts);
  CHECK(ok.stability);
  CHECK(ok.cyclicity);
  CHECK(ok.passed());
  CHECK(ok.stability_checked > 0);
  CHECK(ok.cyclicity_checked == 100 * 100);

  // A Nash point cannot sit inside an equilibrium cycle.
  const double d0 = 20.0 / 3.0;
  const auto dpay = duopoly_D_payoff_map(kLinear, 0.4, 1.0);
  const auto bad = verify_equilibrium_cycle(dpay, d0, d0 + 0.1, 9.0);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.cyclicity);
  REQUIRE_FALSE(bad.cyclicity_failures.empty());

  CHECK_THROWS_AS(verify_equilibrium_cycle(payoff, 2.5, 2.5, 9.0), DomainError);
  CHECK_THROWS_AS(verify_equilibrium_cycle(payoff, 2.0, 9.5, 9.0), DomainError);
  CycleVerifyOptions coarse;
  coarse.grid_n = 10;
  CHECK_THROWS_AS(verify_equilibrium_cycle(payoff, 2.0, 3.0, 9.0, coarse), DomainError);
}

TEST_CASE("best-response dynamics") {
  BrOptions opts;
  opts.phi_h = 9.0;
  const auto dpay = duopoly_D_payoff_map(kLinear, 0.4, 1.0);
  const auto conv = best_response_dynamics(dpay, {1.0, 1.0}, opts);
  CHECK(conv.classification == BrClassification::Converged);
  // The payoff is quadratic at its peak, so tie-keeping at gain 1e-12 leaves
  // the price resolved to about sqrt(1e-12 / curvature).
  CHECK(std::abs(conv.point.first - 20.0 / 3.0) < 1e-5);
  CHECK(std::abs(conv.point.second - 20.0 / 3.0) < 1e-5);

  const auto bpay = limit_B_payoff(kLinear, 0.4, 1.0);
  BrOptions cyc_opts = opts;
  cyc_opts.candidates = {2.0, 2.25, 3.0, 6.0};
  const auto osc = best_response_dynamics(bpay, {2.6, 2.6}, cyc_opts);
  CHECK(osc.classification == BrClassification::Oscillating);
  CHECK(osc.window_lo >= 2.25 - 1e-3);
  CHECK(osc.window_hi <= 3.0 + 1e-3);
  for (const auto& [a, b] : osc.trajectory) {
    CHECK(a >= 2.25 - 1e-3);
    CHECK(a <= 3.0 + 1e-3);
    CHECK(b >= 2.25 - 1e-3);
    CHECK(b <= 3.0 + 1e-3);
  }

  const PayoffMap flat = [](double, double) { return std::array<double, 2>{1.0, 1.0}; };
  const auto still = best_response_dynamics(flat, {4.0, 7.0}, opts);
  CHECK(still.classification == BrClassification::Converged);
  CHECK(still.point == std::pair{4.0, 7.0});
  CHECK(still.rounds == 1);
}

TEST_CASE("property: reported Nash points admit no profitable deviation") {
  for (int i = 0; i <= 29; ++i) {
    const double e = 0.05 + i * 0.05;
    CAPTURE(e);
    const auto o = duopoly_D_equilibrium(kLinear, e, 1.0, 9.0);
    REQUIRE(o.kind == OutcomeKind::NashPoint);
    const auto chk = max_unilateral_gain(duopoly_D_payoff_map(kLinear, e, 1.0), o.phi1, o.phi2, 9.0, 1000);
    CHECK(chk.best_gain <= 1e-8);

    const auto b = duopoly_B_equilibrium(kLinear, e, 1.0, 9.0, 0.01);
    if (b.kind == OutcomeKind::NashPoint) {
      const auto cb = max_unilateral_gain(limit_B_payoff(kLinear, e, 1.0), b.phi1, b.phi2, 9.0, 1000);
      CHECK(cb.best_gain <= 1e-8);
    }
  }
}

TEST_CASE("property: regime partition and cycle endpoint identity") {
  test::CaseGen gen(51);
  for (int k = 0; k < test::kPropertyCases; ++k) {
    const auto rf = gen.response();
    const double Lambda = gen.uniform(0.2, 5.0);
    const double e = gen.uniform(0.02, 0.99) * Lambda;
    const auto t = thresholds(rf, e, Lambda);
    const auto o = duopoly_B_equilibrium(rf, e, Lambda, rf.phi_h(), 0.01);
    const bool ne = t.phi_m_star <= t.phi_underbar && t.phi_underbar <= rf.phi_h();
    const bool cyc = t.phi_underbar < t.phi_m_star && t.phi_m_star <= std::min(rf.phi_h(), t.phi_bar);
    CAPTURE(k);
    CHECK_FALSE((ne && cyc));
    if (ne) {
      CHECK(o.kind == OutcomeKind::NashPoint);
    } else if (cyc) {
      REQUIRE(o.kind == OutcomeKind::EquilibriumCycle);
      CHECK(e * o.cycle_lo() == Approx(m_objective(rf, e, Lambda, o.cycle_hi())).epsilon(1e-14));
      CHECK(o.cycle_lo() < o.cycle_hi());
    } else {
      CHECK(o.kind == OutcomeKind::NoEquilibriumKnown);
    }
  }
}

TEST_CASE("property: epsilon equilibria hold their bound") {
  test::CaseGen gen(52);
  for (int k = 0; k < 40; ++k) {
    const auto rf = gen.response();
    const double Lambda = gen.uniform(0.2, 5.0);
    const double e = gen.uniform(1.0, 3.0) * Lambda;
    const double eps = gen.log_uniform(1e-4, 0.5);
    const auto o = duopoly_B_equilibrium(rf, e, Lambda, rf.phi_h(), eps);
    CAPTURE(k);
    REQUIRE(o.kind == OutcomeKind::EpsilonNE);
    const auto chk = max_unilateral_gain(limit_B_payoff(rf, e, Lambda), o.phi1, o.phi2, rf.phi_h(), 2000);
    CHECK(chk.best_gain <= eps);
  }
}
