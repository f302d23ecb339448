#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace holeflux::num {

struct BisectResult {
  double value;          // midpoint of the final bracket
  double bracket_width;  // final hi - lo
  int iterations;
};

// Bisection on a monotone boolean predicate: returns the point where the
// predicate flips, to within tol. The bracket may be given in either order.
template <class Pred>
BisectResult bisect_predicate(Pred&& pred, double lo, double hi, double tol,
                              int max_iterations = 200) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_predicate: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  const bool p_lo = pred(lo);
  const bool p_hi = pred(hi);
  if (p_lo == p_hi) {
    throw std::invalid_argument("bisect_predicate: predicate equal at both bracket ends");
  }
  int it = 0;
  while (hi - lo > tol && it < max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // floating-point resolution
    if (pred(mid) == p_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++it;
  }
  return {0.5 * (lo + hi), hi - lo, it};
}

// Root bracketing for a continuous function with a sign change on [lo, hi].
template <class F>
BisectResult bisect_root(F&& f, double lo, double hi, double tol, int max_iterations = 200) {
  if (lo > hi) std::swap(lo, hi);
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw std::invalid_argument("bisect_root: no sign change on bracket");
  }
  auto pred = [&f, f_lo](double x) { return std::signbit(f(x)) == std::signbit(f_lo); };
  return bisect_predicate(pred, lo, hi, tol, max_iterations);
}

}  // namespace holeflux::num
