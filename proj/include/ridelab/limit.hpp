#pragma once

#include "ridelab/response.hpp"

namespace ridelab {

// beta -> 0 limits of the single-platform metrics under a static price.

// (1 - e / (lambda f(phi)))^+, written in terms of f(phi) directly.
double limit_D(double e, double lambda, double f_phi);

// e phi when e < lambda f(phi), lambda f(phi) phi otherwise.
double limit_MR_single(double e, double lambda, double phi, const ResponseFunction& rf);

// 1 - e / lambda when e < lambda f(phi), 1 - f(phi) otherwise.
double limit_B(double e, double lambda, double phi, const ResponseFunction& rf);

// Limit payoff of platform i under QoS D:
// min{ e phi_i, Lambda f_i f_o phi_i / (f_i + f_o) }.
double duopoly_D_payoff(double e, double Lambda, const ResponseFunction& rf, double phi_i,
                        double phi_other);

// Which piece of the limit WE/MR table applies once prices are ordered so
// that the first platform charges at least as much as the second.
enum class LimitCase {
  EqualPrices,    // phi1 = phi2: even split
  BelowUnderbar,  // phi_hi < phi_underbar: both saturated by drivers
  Intermediate,   // phi_hi in [phi_underbar, phi_bar): pricier platform keeps the residual
  AboveBar,       // phi_hi >= phi_bar: pricier platform gets no passengers
};

struct LimitDuopolyOutcome {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mr1 = 0.0;
  double mr2 = 0.0;
  LimitCase case_tag = LimitCase::EqualPrices;
  bool swapped = false;  // true when phi1 < phi2 was normalized by swapping
};

// Limit Wardrop split and matching revenues under QoS B.
LimitDuopolyOutcome limit_WE_MR_B(double e, double Lambda, const ResponseFunction& rf,
                                  double phi1, double phi2);

const char* to_string(LimitCase c);

}  // namespace ridelab
