#include "ridelab/wardrop.hpp"

#include <cmath>
#include <string>

#include "ridelab/bcmp.hpp"
#include "ridelab/errors.hpp"

namespace ridelab {

namespace {

// Rejects curves seen to decrease on a three-point probe. Flat readings are
// accepted: a strictly increasing curve can be constant to double precision
// (e.g. blocking when drivers are scarce and D underflows next to 1 - f).
void probe_increasing(const QosCurve& q, double Lambda, const char* name) {
  const double a = q(0.0);
  const double b = q(0.5 * Lambda);
  const double c = q(Lambda);
  if (!(a <= b && b <= c)) {
    throw AssumptionViolation(std::string(name) +
                              " is not strictly increasing in its own arrival rate");
  }
}

}  // namespace

WardropSplit solve_WE(const QosCurve& q1, const QosCurve& q2, double Lambda,
                      const WardropOptions& opts) {
  if (!(Lambda > 0.0) || !std::isfinite(Lambda)) throw DomainError("solve_WE: Lambda must be > 0");
  const double tol = opts.tol.value_or(1e-9 * Lambda);
  if (!(tol > 0.0)) throw DomainError("solve_WE: tol must be > 0");
  probe_increasing(q1, Lambda, "Q1");
  probe_increasing(q2, Lambda, "Q2");

  auto g = [&](double x) { return q1(x) - q2(Lambda - x); };

  WardropSplit out;
  const double g0 = g(0.0);
  if (g0 >= 0.0) {
    out.lambda1 = 0.0;
    out.lambda2 = Lambda;
    out.residual = std::abs(g0);
    out.corner = SplitCorner::AllToPlatform2;
    return out;
  }
  const double gL = g(Lambda);
  if (gL <= 0.0) {
    out.lambda1 = Lambda;
    out.lambda2 = 0.0;
    out.residual = std::abs(gL);
    out.corner = SplitCorner::AllToPlatform1;
    return out;
  }

  double lo = 0.0;
  double hi = Lambda;
  if (opts.bracket_lo && opts.bracket_hi && *opts.bracket_lo < *opts.bracket_hi &&
      *opts.bracket_lo >= 0.0 && *opts.bracket_hi <= Lambda) {
    if (g(*opts.bracket_lo) < 0.0 && g(*opts.bracket_hi) > 0.0) {
      lo = *opts.bracket_lo;
      hi = *opts.bracket_hi;
    }
  }

  double mid = 0.5 * (lo + hi);
  double gm = g(mid);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (gm == 0.0 || (hi - lo) <= tol) break;
    if (gm < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = 0.5 * (lo + hi);
    gm = g(mid);
  }
  out.lambda1 = mid;
  out.lambda2 = Lambda - mid;
  out.residual = std::abs(gm);
  out.corner = SplitCorner::Interior;
  out.iterations = it;
  return out;
}

WardropSplit we_D_closed_form(const ResponseFunction& rf, double phi1, double phi2,
                              double Lambda) {
  const double f1 = rf.value(phi1);
  const double f2 = rf.value(phi2);
  WardropSplit out;
  out.lambda1 = Lambda * f2 / (f1 + f2);
  out.lambda2 = Lambda - out.lambda1;
  out.corner = SplitCorner::Interior;
  out.residual = 0.0;
  return out;
}

WardropSplit we_B_exact(const PlatformParams& params1, const PlatformParams& params2,
                        const ResponseFunction& rf, double phi1, double phi2,
                        const WardropOptions& opts) {
  if (params1.beta() <= 0.0 || params2.beta() <= 0.0) {
    throw UnsupportedRegime("we_B_exact needs beta > 0 on both platforms");
  }
  if (params1.Lambda() != params2.Lambda()) {
    throw DomainError("we_B_exact: platforms disagree on aggregate Lambda");
  }
  const auto pol1 = PricePolicy::fixed(phi1);
  const auto pol2 = PricePolicy::fixed(phi2);
  QosCurve q1 = [&](double x) { return blocking_probability(params1, pol1, rf, x); };
  QosCurve q2 = [&](double x) { return blocking_probability(params2, pol2, rf, x); };
  return solve_WE(q1, q2, params1.Lambda(), opts);
}

const char* to_string(SplitCorner c) {
  switch (c) {
    case SplitCorner::Interior: return "interior";
    case SplitCorner::AllToPlatform1: return "all_to_platform1";
    case SplitCorner::AllToPlatform2: return "all_to_platform2";
  }
  return "unknown";
}

}  // namespace ridelab
