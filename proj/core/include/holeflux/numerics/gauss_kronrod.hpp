#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace holeflux::num {

// Error norm customization point for generic (e.g. complex-valued)
// integrands.
inline double gk_norm(double v) { return std::abs(v); }
inline double gk_norm(const std::complex<double>& v) { return std::abs(v); }

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-index nodes. QUADPACK values.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace detail

// Single Gauss-Kronrod 7-15 panel. Returns the Kronrod estimate; *error_out
// receives the usual QUADPACK-style error bound |K15 - G7| scaled.
template <class F, class T = std::invoke_result_t<F&, double>>
T gk15_panel(F&& f, double a, double b, double* error_out) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T fc = f(center);
  T result_k = fc * detail::kGk15WeightsK[7];
  T result_g = fc * detail::kGk15WeightsG[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * detail::kGk15Nodes[i];
    T sum = f(center - dx) + f(center + dx);
    result_k = result_k + sum * detail::kGk15WeightsK[i];
    if (i % 2 == 1) {
      result_g = result_g + sum * detail::kGk15WeightsG[i / 2];
    }
  }
  result_k = result_k * half;
  result_g = result_g * half;
  if (error_out != nullptr) {
    const double diff = gk_norm(result_k - result_g);
    // QUADPACK sharpening of the raw |K - G| difference.
    *error_out = std::min(diff, 200.0 * diff * std::sqrt(std::max(diff, 1e-300)));
    *error_out = std::max(*error_out, 1e-300);
  }
  return result_k;
}

template <class T>
struct AdaptiveResult {
  T value{};
  double error = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

// Globally adaptive bisection on GK15 panels, worst-error-first.
template <class F, class T = std::invoke_result_t<F&, double>>
AdaptiveResult<T> adaptive_gk15(F&& f, double a, double b, double abs_tol,
                                double rel_tol, int max_subdivisions) {
  struct Segment {
    double a, b, error;
    T value;
  };

  std::vector<Segment> segments;
  double err0 = 0.0;
  T val0 = gk15_panel(f, a, b, &err0);
  segments.push_back({a, b, err0, val0});

  AdaptiveResult<T> out;
  out.subdivisions = 1;
  for (;;) {
    T total = segments.front().value;
    double total_err = segments.front().error;
    for (std::size_t i = 1; i < segments.size(); ++i) {
      total = total + segments[i].value;
      total_err += segments[i].error;
    }
    out.value = total;
    out.error = total_err;
    const double tol = std::max(abs_tol, rel_tol * gk_norm(total));
    if (total_err <= tol) {
      out.converged = true;
      return out;
    }
    if (out.subdivisions >= max_subdivisions) {
      out.converged = false;
      return out;
    }
    auto worst = std::max_element(
        segments.begin(), segments.end(),
        [](const Segment& x, const Segment& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (mid <= worst->a || mid >= worst->b) {
      out.converged = false;  // interval at floating-point resolution
      return out;
    }
    Segment left{worst->a, mid, 0.0, T{}};
    Segment right{mid, worst->b, 0.0, T{}};
    left.value = gk15_panel(f, left.a, left.b, &left.error);
    right.value = gk15_panel(f, right.a, right.b, &right.error);
    *worst = left;
    segments.push_back(right);
    ++out.subdivisions;
  }
}

}  // namespace holeflux::num
