#pragma once

#include <functional>
#include <optional>

#include "ridelab/platform.hpp"
#include "ridelab/response.hpp"

namespace ridelab {

// QoS of one platform as a function of its own passenger rate. Must be
// continuous and strictly increasing on [0, Lambda].
using QosCurve = std::function<double(double)>;

enum class SplitCorner { Interior, AllToPlatform1, AllToPlatform2 };

struct WardropSplit {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double residual = 0.0;  // |Q1(lambda1) - Q2(lambda2)|
  SplitCorner corner = SplitCorner::Interior;
  int iterations = 0;
};

struct WardropOptions {
  // Absolute tolerance on lambda; defaults to 1e-9 * Lambda when unset.
  std::optional<double> tol;
  int max_iter = 200;
  // Optional initial bracket inside [0, Lambda]. Used when it brackets the
  // root, otherwise the solver falls back to the full interval.
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;
};

// Bisection on g(lambda) = Q1(lambda) - Q2(Lambda - lambda). Endpoint signs are
// examined first: g(0) >= 0 sends everyone to platform 2, g(Lambda) <= 0 sends
// everyone to platform 1. Throws AssumptionViolation when a three-point probe
// shows either curve failing to increase.
WardropSplit solve_WE(const QosCurve& q1, const QosCurve& q2, double Lambda,
                      const WardropOptions& opts = {});

// Closed-form split under QoS D: lambda1 = Lambda f2 / (f1 + f2). Valid for
// every beta > 0; effective acceptance rates lambda_i f(phi_i) are equalized.
WardropSplit we_D_closed_form(const ResponseFunction& rf, double phi1, double phi2,
                              double Lambda);

// Split under QoS B with the exact product-form blocking curves. Both
// platforms must have beta > 0 and the same aggregate Lambda.
WardropSplit we_B_exact(const PlatformParams& params1, const PlatformParams& params2,
                        const ResponseFunction& rf, double phi1, double phi2,
                        const WardropOptions& opts = {});

const char* to_string(SplitCorner c);

}  // namespace ridelab
