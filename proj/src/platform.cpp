#include "ridelab/platform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ridelab/errors.hpp"

namespace ridelab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

PlatformParams::PlatformParams(double Lambda, double eta, double p, double nu, double beta,
                               double phi_h)
    : Lambda_(Lambda), eta_(eta), p_(p), e_(0.0), nu_(nu), beta_(beta), phi_h_(phi_h) {
  require(std::isfinite(Lambda) && Lambda >= 0.0, "Lambda must be finite and >= 0");
  require(std::isfinite(eta) && eta >= 0.0, "eta must be finite and >= 0");
  require(p >= 0.0 && p < 1.0, "rejoin probability p must lie in [0, 1)");
  require(std::isfinite(nu) && nu > 0.0, "nu must be finite and > 0");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(phi_h) && phi_h > 0.0, "phi_h must be finite and > 0");
  e_ = eta_ / (1.0 - p_);
}

PlatformParams PlatformParams::from_effective(double Lambda, double e, double nu, double beta,
                                              double phi_h, double p) {
  return PlatformParams(Lambda, e * (1.0 - p), p, nu, beta, phi_h);
}

PlatformParams PlatformParams::with_beta(double beta) const {
  return PlatformParams(Lambda_, eta_, p_, nu_, beta, phi_h_);
}

PlatformParams PlatformParams::with_Lambda(double Lambda) const {
  return PlatformParams(Lambda, eta_, p_, nu_, beta_, phi_h_);
}

PricePolicy PricePolicy::fixed(double price) { return PricePolicy(StaticPrice{price}); }

PricePolicy PricePolicy::dynamic(std::vector<double> prices, double tail) {
  return PricePolicy(DynamicPrice{std::move(prices), tail});
}

bool PricePolicy::uniform() const {
  if (const auto* dyn = std::get_if<DynamicPrice>(&kind_)) {
    return std::all_of(dyn->prices.begin(), dyn->prices.end(),
                       [t = dyn->tail](double v) { return v == t; });
  }
  return true;
}

double PricePolicy::uniform_price() const {
  if (const auto* s = std::get_if<StaticPrice>(&kind_)) return s->price;
  return std::get<DynamicPrice>(kind_).tail;
}

double PricePolicy::at(std::size_t n) const {
  if (const auto* s = std::get_if<StaticPrice>(&kind_)) return s->price;
  const auto& dyn = std::get<DynamicPrice>(kind_);
  if (n >= 1 && n <= dyn.prices.size()) return dyn.prices[n - 1];
  return dyn.tail;
}

std::size_t PricePolicy::explicit_levels() const {
  if (const auto* dyn = std::get_if<DynamicPrice>(&kind_)) return dyn->prices.size();
  return 0;
}

void PricePolicy::check(double phi_h) const {
  auto ok = [phi_h](double v) { return v >= 0.0 && v <= phi_h; };
  if (const auto* s = std::get_if<StaticPrice>(&kind_)) {
    if (!ok(s->price)) throw DomainError("static price outside [0, phi_h]");
    return;
  }
  const auto& dyn = std::get<DynamicPrice>(kind_);
  if (!ok(dyn.tail)) throw DomainError("dynamic tail price outside [0, phi_h]");
  for (std::size_t k = 0; k < dyn.prices.size(); ++k) {
    if (!ok(dyn.prices[k])) {
      throw DomainError("dynamic price at n = " + std::to_string(k + 1) + " outside [0, phi_h]");
    }
  }
}

}  // namespace ridelab
