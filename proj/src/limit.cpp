#include "ridelab/limit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ridelab/errors.hpp"
#include "ridelab/model.hpp"

namespace ridelab {

double limit_D(double e, double lambda, double f_phi) {
  const double k = lambda * f_phi;
  if (k <= e) return 0.0;
  return 1.0 - e / k;
}

double limit_MR_single(double e, double lambda, double phi, const ResponseFunction& rf) {
  const double f = rf.value(phi);
  // The boundary e = lambda f belongs to the second branch; both agree there.
  if (e < lambda * f) return e * phi;
  return lambda * f * phi;
}

double limit_B(double e, double lambda, double phi, const ResponseFunction& rf) {
  const double f = rf.value(phi);
  if (e < lambda * f) return 1.0 - e / lambda;
  return 1.0 - f;
}

double duopoly_D_payoff(double e, double Lambda, const ResponseFunction& rf, double phi_i,
                        double phi_other) {
  const double fi = rf.value(phi_i);
  const double fo = rf.value(phi_other);
  const double share = Lambda * fi * fo * phi_i / (fi + fo);
  return std::min(e * phi_i, share);
}

LimitDuopolyOutcome limit_WE_MR_B(double e, double Lambda, const ResponseFunction& rf,
                                  double phi1, double phi2) {
  if (!(e > 0.0) || !(Lambda > 0.0)) throw DomainError("limit_WE_MR_B: need e, Lambda > 0");
  const double f1 = rf.value(phi1);
  rf.value(phi2);

  LimitDuopolyOutcome out;
  if (phi1 == phi2) {
    out.case_tag = LimitCase::EqualPrices;
    out.lambda1 = out.lambda2 = 0.5 * Lambda;
    // Below phi_underbar both platforms are driver-limited; the minimum picks
    // e phi there and (Lambda/2) f phi from phi_underbar upward.
    const double mr = std::min(e * phi1, 0.5 * Lambda * f1 * phi1);
    out.mr1 = out.mr2 = mr;
    return out;
  }
  if (phi1 < phi2) {
    LimitDuopolyOutcome flipped = limit_WE_MR_B(e, Lambda, rf, phi2, phi1);
    std::swap(flipped.lambda1, flipped.lambda2);
    std::swap(flipped.mr1, flipped.mr2);
    flipped.swapped = true;
    return flipped;
  }

  const double lo_thr = phi_underbar(rf, e, Lambda);
  const double hi_thr = phi_bar(rf, e, Lambda);
  const double f2 = rf.value(phi2);
  if (phi1 < lo_thr) {
    out.case_tag = LimitCase::BelowUnderbar;
    out.lambda1 = 0.5 * Lambda;
    out.mr1 = e * phi1;
    out.mr2 = e * phi2;
  } else if (phi1 < hi_thr) {
    out.case_tag = LimitCase::Intermediate;
    out.lambda1 = Lambda - e / f1;
    out.mr1 = (Lambda * f1 - e) * phi1;
    out.mr2 = e * phi2;
  } else {
    out.case_tag = LimitCase::AboveBar;
    out.lambda1 = 0.0;
    out.mr1 = 0.0;
    out.mr2 = std::min(Lambda * f2, e) * phi2;
  }
  out.lambda2 = Lambda - out.lambda1;
  return out;
}

const char* to_string(LimitCase c) {
  switch (c) {
    case LimitCase::EqualPrices: return "equal_prices";
    case LimitCase::BelowUnderbar: return "below_underbar";
    case LimitCase::Intermediate: return "intermediate";
    case LimitCase::AboveBar: return "above_bar";
  }
  return "unknown";
}

}  // namespace ridelab
