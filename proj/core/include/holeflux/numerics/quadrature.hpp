#pragma once

#include <functional>

namespace holeflux::num {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 512;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod integration of f over [a, b]. Never throws on
// non-convergence; the best estimate is returned with converged = false.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg = {});

// Integral over [a, inf), mapped onto [0, 1) via x = a + t / (1 - t).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double a, const QuadratureConfig& cfg = {});

}  // namespace holeflux::num
