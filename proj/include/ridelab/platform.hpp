#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace ridelab {

// Rates of one platform. e = eta / (1 - p) is the effective driver rate seen
// by both the waiting queue and the ride/break station.
class PlatformParams {
 public:
  // Throws DomainError on negative rates, p outside [0, 1) or nu <= 0.
  // beta = 0 is accepted here; exact evaluation rejects it later.
  PlatformParams(double Lambda, double eta, double p, double nu, double beta, double phi_h);

  // Convenience for callers that think in effective rates; eta = e (1 - p).
  static PlatformParams from_effective(double Lambda, double e, double nu, double beta,
                                       double phi_h, double p = 0.0);

  double Lambda() const { return Lambda_; }
  double eta() const { return eta_; }
  double p() const { return p_; }
  double e() const { return e_; }
  double nu() const { return nu_; }
  double beta() const { return beta_; }
  double phi_h() const { return phi_h_; }

  PlatformParams with_beta(double beta) const;
  PlatformParams with_Lambda(double Lambda) const;

 private:
  double Lambda_;
  double eta_;
  double p_;
  double e_;
  double nu_;
  double beta_;
  double phi_h_;
};

struct StaticPrice {
  double price = 0.0;
};

// Price per waiting-driver count n = 1..prices.size(); `tail` for larger n.
struct DynamicPrice {
  std::vector<double> prices;
  double tail = 0.0;
};

class PricePolicy {
 public:
  static PricePolicy fixed(double price);
  static PricePolicy dynamic(std::vector<double> prices, double tail);

  bool is_static() const { return std::holds_alternative<StaticPrice>(kind_); }

  // The fixed price when is_static(), or when every dynamic entry (and the
  // tail) coincide; evaluation then follows the static path exactly.
  bool uniform() const;
  double uniform_price() const;

  // Price quoted with n >= 1 waiting drivers.
  double at(std::size_t n) const;

  // Largest n with an explicitly stored price (0 for static).
  std::size_t explicit_levels() const;

  // Throws DomainError if any price leaves [0, phi_h].
  void check(double phi_h) const;

 private:
  explicit PricePolicy(std::variant<StaticPrice, DynamicPrice> kind) : kind_(std::move(kind)) {}

  std::variant<StaticPrice, DynamicPrice> kind_;
};

}  // namespace ridelab
