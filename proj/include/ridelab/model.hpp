#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ridelab/response.hpp"

namespace ridelab {

// Revenue-type objectives that parameterize the equilibrium results.
//   P(phi) = f(phi) phi               (per-unit-demand revenue)
//   M(phi) = (Lambda/2) f(phi) phi    (half-share demand revenue)
//   m(phi) = (Lambda f(phi) - e) phi  (undercut-by-rival residual revenue)
//   d(phi) = 2 f(phi) + phi f'(phi)   (first-order term of the D-duopoly BR)
struct ObjectiveValues {
  double P = 0.0;
  double M = 0.0;
  double m = 0.0;
  double d = 0.0;
};

ObjectiveValues objective_values(const ResponseFunction& rf, double e, double Lambda, double phi);

double m_objective(const ResponseFunction& rf, double e, double Lambda, double phi);
double d_objective(const ResponseFunction& rf, double phi);

// Where d(phi) = 0 sits relative to [0, phi_h]. d is strictly decreasing, so
// AboveRange means d > 0 on the whole interval and BelowRange means d <= 0.
struct DZero {
  enum class Where { Interior, AboveRange, BelowRange };
  Where where = Where::Interior;
  double phi = 0.0;  // meaningful only when Interior

  bool interior() const { return where == Where::Interior; }
};

struct ThresholdSet {
  // f^-1(2e/Lambda), or 0 when 2e/Lambda > 1. Can exceed phi_h.
  double phi_underbar = 0.0;
  // f^-1(e/Lambda), or 0 when e/Lambda > 1. Can exceed phi_h.
  double phi_bar = 0.0;
  double phi_P_star = 0.0;
  double phi_m_star = 0.0;
  DZero phi_d_zero;
  // Cycle endpoints; defined only when e < Lambda.
  std::optional<double> phi_L_star;
  std::optional<double> phi_U_star;
};

// Underbar / bar thresholds only (no optimization); cheap enough for payoff
// evaluation in inner loops.
double phi_underbar(const ResponseFunction& rf, double e, double Lambda);
double phi_bar(const ResponseFunction& rf, double e, double Lambda);

DZero find_d_zero(const ResponseFunction& rf);
double argmax_P(const ResponseFunction& rf);
// Argmax of m over [0, cap]; cap defaults to rf.phi_h().
double argmax_m(const ResponseFunction& rf, double e, double Lambda);
double argmax_m(const ResponseFunction& rf, double e, double Lambda, double cap);

ThresholdSet thresholds(const ResponseFunction& rf, double e, double Lambda);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  // Second differences strictly negative everywhere (affine f fails this).
  bool strictly_concave = false;

  bool passed() const;
};

// Numeric check of the standing assumptions on f over a uniform grid:
// f(0) = 1, 0 < f <= 1, f' < 0, second differences <= 0.
ValidationReport validate_response_function(const ResponseFunction& rf, int grid_size = 257);

}  // namespace ridelab
