#pragma once

#include <functional>

namespace ridelab {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

struct GoldenOptions {
  int grid_points = 64;
  double tol = 1e-8;
  int max_iter = 200;
};

// Maximizes a unimodal function on [lo, hi]: a uniform grid pre-scan picks the
// bracket [x_{k-1}, x_{k+1}] around the best grid point, then golden-section
// search shrinks it below tol. Endpoints are always candidates.
ScalarMax maximize_golden(const std::function<double(double)>& fn, double lo, double hi,
                          const GoldenOptions& opts = {});

// Golden-section search on a bracket believed to contain a single maximum.
ScalarMax golden_section(const std::function<double(double)>& fn, double lo, double hi,
                         double tol = 1e-8, int max_iter = 200);

// Root of a strictly decreasing fn on [lo, hi]; requires fn(lo) >= 0 >= fn(hi).
double bisect_decreasing(const std::function<double(double)>& fn, double lo, double hi,
                         double tol = 1e-13, int max_iter = 200);

}  // namespace ridelab
