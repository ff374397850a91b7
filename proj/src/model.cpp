#include "ridelab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ridelab/errors.hpp"
#include "ridelab/optimize.hpp"

namespace ridelab {

namespace {

void check_rates(double e, double Lambda) {
  if (!(e > 0.0) || !(Lambda > 0.0) || !std::isfinite(e) || !std::isfinite(Lambda)) {
    throw DomainError("need e > 0 and Lambda > 0");
  }
}

// Golden-section result tightened with a bisection on the (strictly
// decreasing) derivative when a sign change is found near it. The golden
// stage alone cannot resolve an argmax much below sqrt(machine eps).
double polish_argmax(const std::function<double(double)>& slope, double x, double lo,
                     double hi) {
  const double span = 1e-6 * std::max(1.0, hi - lo);
  const double a = std::max(lo, x - span);
  const double b = std::min(hi, x + span);
  if (slope(a) >= 0.0 && slope(b) <= 0.0) {
    return bisect_decreasing(slope, a, b, 1e-15);
  }
  return x;
}

double inverse_or_zero(const ResponseFunction& rf, double y) {
  if (y > 1.0) return 0.0;
  return rf.inverse_unbounded(y);
}

}  // namespace

ObjectiveValues objective_values(const ResponseFunction& rf, double e, double Lambda,
                                 double phi) {
  const double f = rf.value(phi);
  const double fp = rf.derivative(phi);
  ObjectiveValues out;
  out.P = f * phi;
  out.M = 0.5 * Lambda * f * phi;
  out.m = (Lambda * f - e) * phi;
  out.d = 2.0 * f + phi * fp;
  return out;
}

double m_objective(const ResponseFunction& rf, double e, double Lambda, double phi) {
  return (Lambda * rf.value(phi) - e) * phi;
}

double d_objective(const ResponseFunction& rf, double phi) {
  return 2.0 * rf.value(phi) + phi * rf.derivative(phi);
}

double phi_underbar(const ResponseFunction& rf, double e, double Lambda) {
  check_rates(e, Lambda);
  return inverse_or_zero(rf, 2.0 * e / Lambda);
}

double phi_bar(const ResponseFunction& rf, double e, double Lambda) {
  check_rates(e, Lambda);
  return inverse_or_zero(rf, e / Lambda);
}

DZero find_d_zero(const ResponseFunction& rf) {
  const double phi_h = rf.phi_h();
  auto d = [&rf](double phi) { return d_objective(rf, phi); };
  DZero out;
  if (d(0.0) <= 0.0) {
    out.where = DZero::Where::BelowRange;
  } else if (d(phi_h) > 0.0) {
    out.where = DZero::Where::AboveRange;
  } else {
    out.where = DZero::Where::Interior;
    out.phi = bisect_decreasing(d, 0.0, phi_h);
  }
  return out;
}

double argmax_P(const ResponseFunction& rf) {
  const double phi_h = rf.phi_h();
  auto P = [&rf](double phi) { return rf.value(phi) * phi; };
  auto slope = [&rf](double phi) { return rf.value(phi) + phi * rf.derivative(phi); };
  const ScalarMax g = maximize_golden(P, 0.0, phi_h);
  return polish_argmax(slope, g.x, 0.0, phi_h);
}

double argmax_m(const ResponseFunction& rf, double e, double Lambda) {
  return argmax_m(rf, e, Lambda, rf.phi_h());
}

double argmax_m(const ResponseFunction& rf, double e, double Lambda, double cap) {
  check_rates(e, Lambda);
  if (!(cap > 0.0 && cap <= rf.phi_h())) throw DomainError("argmax_m: cap outside (0, phi_h]");
  const double phi_h = cap;
  auto m = [&](double phi) { return m_objective(rf, e, Lambda, phi); };
  auto slope = [&](double phi) {
    return Lambda * (rf.value(phi) + phi * rf.derivative(phi)) - e;
  };
  const ScalarMax g = maximize_golden(m, 0.0, phi_h);
  return polish_argmax(slope, g.x, 0.0, phi_h);
}

ThresholdSet thresholds(const ResponseFunction& rf, double e, double Lambda) {
  check_rates(e, Lambda);
  ThresholdSet t;
  t.phi_underbar = phi_underbar(rf, e, Lambda);
  t.phi_bar = phi_bar(rf, e, Lambda);
  t.phi_P_star = argmax_P(rf);
  t.phi_m_star = argmax_m(rf, e, Lambda);
  t.phi_d_zero = find_d_zero(rf);
  if (e < Lambda) {
    t.phi_U_star = t.phi_m_star;
    t.phi_L_star = m_objective(rf, e, Lambda, t.phi_m_star) / e;
  }
  return t;
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport validate_response_function(const ResponseFunction& rf, int grid_size) {
  if (grid_size < 3) throw DomainError("validate_response_function: grid_size must be >= 3");
  const double phi_h = rf.phi_h();
  const double h = phi_h / (grid_size - 1);
  std::vector<double> grid(grid_size);
  std::vector<double> fv(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    grid[k] = (k == grid_size - 1) ? phi_h : k * h;
    fv[k] = rf.value_unchecked(grid[k]);
  }

  ValidationReport report;
  auto add = [&report](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const double f0 = fv[0];
  add("f(0) = 1", std::abs(f0 - 1.0) <= 1e-12, "f(0) = " + std::to_string(f0));

  {
    auto bad = std::find_if(fv.begin(), fv.end(), [](double v) { return !(v > 0.0 && v <= 1.0); });
    std::string detail;
    if (bad != fv.end()) {
      const auto k = bad - fv.begin();
      detail = "f(" + std::to_string(grid[k]) + ") = " + std::to_string(*bad);
    }
    add("0 < f <= 1", bad == fv.end(), detail);
  }

  {
    bool ok = true;
    std::string detail;
    // f'(0) = 0 is allowed (square family); decrease must still be strict.
    for (int k = 0; k < grid_size && ok; ++k) {
      const double fp = rf.derivative_unchecked(grid[k]);
      const bool slope_ok = k == 0 ? fp <= 0.0 : fp < 0.0;
      if (!slope_ok || (k > 0 && !(fv[k] < fv[k - 1]))) {
        ok = false;
        detail = "f'(" + std::to_string(grid[k]) + ") = " + std::to_string(fp);
      }
    }
    add("strictly decreasing (f' < 0 for phi > 0)", ok, detail);
  }

  {
    bool weak = true;
    bool strict = true;
    std::string detail;
    // Relative slack absorbs rounding in the affine case.
    const double slack = 1e-12;
    for (int k = 1; k + 1 < grid_size; ++k) {
      const double second = fv[k - 1] - 2.0 * fv[k] + fv[k + 1];
      if (second > slack && weak) {
        weak = false;
        std::ostringstream os;
        os << "second difference " << second << " at phi = " << grid[k];
        detail = os.str();
      }
      if (!(second < -slack)) strict = false;
    }
    add("concave (second differences <= 0)", weak, detail);
    report.strictly_concave = strict;
  }
  return report;
}

}  // namespace ridelab
