#include "ridelab/response.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ridelab/errors.hpp"

namespace ridelab {

namespace {

void check_family_params(const char* name, double a, double phi_h) {
  if (!(phi_h > 0.0) || !std::isfinite(phi_h)) {
    throw DomainError(std::string(name) + " response: phi_h must be positive");
  }
  if (!(a > 0.0) || !(a * phi_h < 1.0)) {
    throw DomainError(std::string(name) + " response: need 0 < a < 1/phi_h");
  }
}

}  // namespace

ResponseFunction ResponseFunction::linear(double a, double phi_h) {
  check_family_params("linear", a, phi_h);
  ResponseFunction rf;
  rf.family_ = ResponseFamily::Linear;
  rf.a_ = a;
  rf.phi_h_ = phi_h;
  rf.f_ = [a](double phi) { return 1.0 - a * phi; };
  rf.f_prime_ = [a](double) { return -a; };
  rf.f_inverse_ = [a](double y) { return (1.0 - y) / a; };
  return rf;
}

ResponseFunction ResponseFunction::square(double a, double phi_h) {
  check_family_params("square", a, phi_h);
  ResponseFunction rf;
  rf.family_ = ResponseFamily::Square;
  rf.a_ = a;
  rf.phi_h_ = phi_h;
  rf.f_ = [a](double phi) { return 1.0 - (a * phi) * (a * phi); };
  rf.f_prime_ = [a](double phi) { return -2.0 * a * a * phi; };
  rf.f_inverse_ = [a](double y) { return std::sqrt(1.0 - y) / a; };
  return rf;
}

ResponseFunction ResponseFunction::custom(Fn f, Fn f_prime, Fn f_inverse, double phi_h) {
  if (!f || !f_prime || !f_inverse) {
    throw DomainError("custom response: f, f' and f^-1 must all be supplied");
  }
  if (!(phi_h > 0.0) || !std::isfinite(phi_h)) {
    throw DomainError("custom response: phi_h must be positive");
  }
  ResponseFunction rf;
  rf.family_ = ResponseFamily::Custom;
  rf.phi_h_ = phi_h;
  rf.f_ = std::move(f);
  rf.f_prime_ = std::move(f_prime);
  rf.f_inverse_ = std::move(f_inverse);
  return rf;
}

void ResponseFunction::check_price(double phi) const {
  if (!(phi >= 0.0 && phi <= phi_h_)) {
    throw DomainError("price " + std::to_string(phi) + " outside [0, " +
                      std::to_string(phi_h_) + "]");
  }
}

double ResponseFunction::value(double phi) const {
  check_price(phi);
  return f_(phi);
}

double ResponseFunction::derivative(double phi) const {
  check_price(phi);
  return f_prime_(phi);
}

double ResponseFunction::value_unchecked(double phi) const { return f_(phi); }

double ResponseFunction::derivative_unchecked(double phi) const { return f_prime_(phi); }

double ResponseFunction::inverse(double y) const {
  const double lo = f_(phi_h_);
  // One ulp-scale slack at both ends so f^-1(f(phi)) round-trips at the caps.
  const double slack = 4.0 * std::numeric_limits<double>::epsilon();
  if (!(y >= lo - slack && y <= 1.0 + slack)) {
    throw RangeError("f^-1 argument " + std::to_string(y) + " outside [f(phi_h), 1]");
  }
  const double phi = f_inverse_(y);
  if (phi < 0.0) return 0.0;
  if (phi > phi_h_) return phi_h_;
  return phi;
}

double ResponseFunction::inverse_unbounded(double y) const {
  if (!(y > 0.0 && y <= 1.0)) {
    throw RangeError("f^-1 argument " + std::to_string(y) + " outside (0, 1]");
  }
  return f_inverse_(y);
}

}  // namespace ridelab
