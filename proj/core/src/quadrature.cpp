#include "holeflux/numerics/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "holeflux/numerics/gauss_kronrod.hpp"

namespace holeflux::num {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_subdivisions < 1) {
    throw std::invalid_argument("integrate_adaptive: invalid QuadratureConfig");
  }
  double sign = 1.0;
  double lo = a, hi = b;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  auto r = adaptive_gk15([&f](double x) { return f(x); }, lo, hi, cfg.abs_tol,
                         cfg.rel_tol, cfg.max_subdivisions);
  return {sign * r.value, r.error, r.subdivisions, r.converged};
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, const QuadratureConfig& cfg) {
  // x = a + t/(1-t), dx = dt/(1-t)^2; the open upper endpoint never evaluates
  // f at infinity because GK nodes are interior.
  auto mapped = [&f, a](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    return f(x) / (om * om);
  };
  return integrate_adaptive(mapped, 0.0, 1.0, cfg);
}

}  // namespace holeflux::num
