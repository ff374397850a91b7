#include "ridelab/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "ridelab/errors.hpp"

namespace ridelab {

namespace {
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
}

ScalarMax golden_section(const std::function<double(double)>& fn, double lo, double hi,
                         double tol, int max_iter) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  ScalarMax best{c, fc};
  if (fd > best.value) best = {d, fd};
  const double mid = 0.5 * (a + b);
  const double fmid = fn(mid);
  if (fmid > best.value) best = {mid, fmid};
  return best;
}

ScalarMax maximize_golden(const std::function<double(double)>& fn, double lo, double hi,
                          const GoldenOptions& opts) {
  if (!(hi >= lo)) throw DomainError("maximize_golden: empty interval");
  if (hi == lo) return {lo, fn(lo)};
  const int n = std::max(opts.grid_points, 3);
  const double h = (hi - lo) / (n - 1);
  int best_k = 0;
  double best_v = fn(lo);
  for (int k = 1; k < n; ++k) {
    const double x = (k == n - 1) ? hi : lo + k * h;
    const double v = fn(x);
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }
  const double best_x = (best_k == n - 1) ? hi : lo + best_k * h;
  const double a = std::max(lo, best_x - h);
  const double b = std::min(hi, best_x + h);
  ScalarMax refined = golden_section(fn, a, b, opts.tol, opts.max_iter);
  if (refined.value >= best_v) return refined;
  return {best_x, best_v};
}

double bisect_decreasing(const std::function<double(double)>& fn, double lo, double hi,
                         double tol, int max_iter) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo < 0.0 || fhi > 0.0) {
    throw DomainError("bisect_decreasing: root not bracketed");
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ridelab
