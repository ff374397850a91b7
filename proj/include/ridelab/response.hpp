#pragma once

#include <functional>

namespace ridelab {

enum class ResponseFamily { Linear, Square, Custom };

// Passenger acceptance probability f(phi) as a function of the quoted price.
//
// Linear:  f(phi) = 1 - a*phi
// Square:  f(phi) = 1 - (a*phi)^2
// Custom:  caller supplies f, f' and f^-1.
//
// Linear and Square require a > 0 and a*phi_h < 1 so that f stays positive on
// [0, phi_h]. Custom functions are not checked at construction; use
// validate_response_function() for that.
class ResponseFunction {
 public:
  using Fn = std::function<double(double)>;

  static ResponseFunction linear(double a, double phi_h);
  static ResponseFunction square(double a, double phi_h);
  static ResponseFunction custom(Fn f, Fn f_prime, Fn f_inverse, double phi_h);

  ResponseFamily family() const { return family_; }
  double a() const { return a_; }
  double phi_h() const { return phi_h_; }

  // Domain-checked evaluation; throws DomainError outside [0, phi_h].
  double value(double phi) const;
  double derivative(double phi) const;
  double operator()(double phi) const { return value(phi); }

  // Throws RangeError unless y lies in [f(phi_h), 1].
  double inverse(double y) const;

  // Inverse without the [f(phi_h), 1] restriction. Thresholds use this so a
  // root above the price cap is reported as such instead of failing.
  double inverse_unbounded(double y) const;

  // f and f' without the domain check (used by grid scans that already stay
  // inside [0, phi_h]).
  double value_unchecked(double phi) const;
  double derivative_unchecked(double phi) const;

 private:
  ResponseFunction() = default;

  void check_price(double phi) const;

  ResponseFamily family_ = ResponseFamily::Linear;
  double a_ = 0.0;
  double phi_h_ = 0.0;
  Fn f_;
  Fn f_prime_;
  Fn f_inverse_;
};

}  // namespace ridelab
