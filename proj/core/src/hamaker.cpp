#include "holeflux/hamaker.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holeflux/numerics/gauss_kronrod.hpp"

namespace holeflux {

namespace {

// Dual number carrying d/dp (p = rho^2) through the column kernel.
struct Dual {
  double v;
  double d;
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
inline Dual operator/(Dual a, Dual b) {
  const double inv = 1.0 / b.v;
  return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}
inline Dual operator+(Dual a, double b) { return {a.v + b, a.d}; }
inline Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }
inline Dual operator*(Dual a, double b) { return {a.v * b, a.d * b}; }
inline Dual sqrt(Dual a) {
  const double r = std::sqrt(a.v);
  return {r, 0.5 * a.d / r};
}
inline Dual make_const(double v) { return {v, 0.0}; }
inline Dual make_var(double v) { return {v, 1.0}; }

// Column kernel g(rho, w): the ring kernel integrated analytically over the
// annulus radius r in [R, inf), divided by pi. With p = rho^2, s = w^2,
//   v0 = R^2 - p + s, V0 = sqrt(v0^2 + 4 p s),
// the substitution u = r^2 reduces the integrand to a rational function over
// (quadratic)^{5/2}, whose antiderivative is elementary. All differences are
// rearranged so no catastrophic cancellation remains for small 4 p s.
template <class T>
T column_kernel(T p, double s, double r2) {
  const T v0 = make_const(r2 + s) - p;
  const T d2 = 4.0 * s * p;
  const T V0 = sqrt(v0 * v0 + d2);
  // S = V0 + v0, computed stably when v0 < 0 via S = d2 / (V0 - v0).
  T S{};
  if (v0.v >= 0.0) {
    S = V0 + v0;
  } else {
    S = d2 / (V0 - v0);
  }
  const T V3 = V0 * V0 * V0;
  const T t1 = 2.0 * (V0 * V0 + V0 * v0 + v0 * v0) / (3.0 * (S * V3));
  const T t2 = 4.0 * p / V3;
  const T t3 = (12.0 * (p * p) - 4.0 * s * p) * (2.0 * V0 + v0) / (3.0 * (V3 * (S * S)));
  return 0.5 * (t1 + t2 + t3);
}

template <>
double column_kernel<double>(double p, double s, double r2) {
  const double v0 = r2 + s - p;
  const double d2 = 4.0 * s * p;
  const double V0 = std::sqrt(v0 * v0 + d2);
  const double S = v0 >= 0.0 ? V0 + v0 : d2 / (V0 - v0);
  const double V3 = V0 * V0 * V0;
  const double t1 = 2.0 * (V0 * V0 + V0 * v0 + v0 * v0) / (3.0 * S * V3);
  const double t2 = 4.0 * p / V3;
  const double t3 = (12.0 * p * p - 4.0 * s * p) * (2.0 * V0 + v0) / (3.0 * V3 * S * S);
  return 0.5 * (t1 + t2 + t3);
}

bool inside_material(const HoleGeometry& geom, FieldPoint pt) {
  return pt.rho >= geom.radius && std::abs(pt.z) <= 0.5 * geom.thickness;
}

// Integrate f over [w_lo, w_hi], pre-splitting at w = 0 where the integrand
// peaks for near-wall field points.
template <class F>
double integrate_column(F&& f, double w_lo, double w_hi, double rel_tol) {
  constexpr int k_max_subdiv = 4000;
  const double abs_floor = 1e-280;
  if (w_lo < 0.0 && w_hi > 0.0) {
    auto a = num::adaptive_gk15(f, w_lo, 0.0, abs_floor, rel_tol, k_max_subdiv);
    auto b = num::adaptive_gk15(f, 0.0, w_hi, abs_floor, rel_tol, k_max_subdiv);
    if (!a.converged || !b.converged) {
      throw ToleranceNotMetError("hamaker quadrature did not reach tolerance");
    }
    return a.value + b.value;
  }
  auto r = num::adaptive_gk15(f, w_lo, w_hi, abs_floor, rel_tol, k_max_subdiv);
  if (!r.converged) throw ToleranceNotMetError("hamaker quadrature did not reach tolerance");
  return r.value;
}

}  // namespace

double hamaker_prefactor(double c3, HamakerMode mode) {
  return (mode == HamakerMode::PaperLiteral ? 9.0 : 6.0) * c3 / std::numbers::pi;
}

double surface_distance(const HoleGeometry& geom, FieldPoint pt) {
  const double half_d = 0.5 * geom.thickness;
  const double dz = std::abs(pt.z) - half_d;  // > 0 above/below the slab band
  const double dr = geom.radius - pt.rho;     // > 0 inside the bore radius
  if (dz <= 0.0) {
    // Within the slab band: the wall (or the material, if dr < 0).
    return dr;
  }
  if (dr >= 0.0) {
    // Above/below the open bore: nearest material point is the edge circle.
    return std::hypot(dr, dz);
  }
  return dz;  // directly above/below the face
}

double hamaker_potential(double c3, const HoleGeometry& geom, HamakerMode mode,
                         FieldPoint pt, double rel_tol) {
  if (!(pt.rho >= 0.0) || !std::isfinite(pt.rho) || !std::isfinite(pt.z)) {
    throw std::domain_error("hamaker_potential: invalid field point");
  }
  if (inside_material(geom, pt) || surface_distance(geom, pt) <= 0.0) {
    throw std::domain_error("hamaker_potential: field point inside membrane material");
  }
  const double r2 = geom.radius * geom.radius;
  const double p = pt.rho * pt.rho;
  const double w_lo = -0.5 * geom.thickness - pt.z;
  const double w_hi = 0.5 * geom.thickness - pt.z;
  const double integral = integrate_column(
      [p, r2](double w) { return column_kernel<double>(p, w * w, r2); }, w_lo, w_hi, rel_tol);
  return -hamaker_prefactor(c3, mode) * std::numbers::pi * integral;
}

namespace {

RadialAxialForce force_impl(double prefactor, const HoleGeometry& geom, FieldPoint pt,
                            double rel_tol) {
  const double r2 = geom.radius * geom.radius;
  const double p = pt.rho * pt.rho;
  const double w_lo = -0.5 * geom.thickness - pt.z;
  const double w_hi = 0.5 * geom.thickness - pt.z;
  const double pref_pi = prefactor * std::numbers::pi;

  // F_z needs only the kernel at the slab limits: the z dependence of U sits
  // entirely in the integration bounds.
  const double g_lo = column_kernel<double>(p, w_lo * w_lo, r2);
  const double g_hi = column_kernel<double>(p, w_hi * w_hi, r2);
  const double f_z = pref_pi * (g_lo - g_hi);

  // F_rho = pref * pi * Int dg/drho dw, with dg/drho = 2 rho dg/dp.
  double f_rho = 0.0;
  if (pt.rho > 0.0) {
    const double dgdp_integral = integrate_column(
        [p, r2](double w) { return column_kernel<Dual>(make_var(p), w * w, r2).d; }, w_lo,
        w_hi, rel_tol);
    f_rho = pref_pi * 2.0 * pt.rho * dgdp_integral;
  }
  return {f_rho, f_z};
}

}  // namespace

RadialAxialForce hamaker_force(double c3, const HoleGeometry& geom, HamakerMode mode,
                               FieldPoint pt, double contact_epsilon, double rel_tol) {
  if (!(pt.rho >= 0.0) || !std::isfinite(pt.rho) || !std::isfinite(pt.z)) {
    throw std::domain_error("hamaker_force: invalid field point");
  }
  if (surface_distance(geom, pt) <= contact_epsilon) {
    throw WallContactError("hamaker_force: field point within contact distance of surface");
  }
  return force_impl(hamaker_prefactor(c3, mode), geom, pt, rel_tol);
}

HamakerField::HamakerField(double c3, const HoleGeometry& geom, HamakerMode mode, double rel_tol)
    : geom_(geom), prefactor_(hamaker_prefactor(c3, mode)), rel_tol_(rel_tol) {}

double HamakerField::potential(FieldPoint pt) const {
  const double r2 = geom_.radius * geom_.radius;
  const double p = pt.rho * pt.rho;
  const double w_lo = -0.5 * geom_.thickness - pt.z;
  const double w_hi = 0.5 * geom_.thickness - pt.z;
  const double integral = integrate_column(
      [p, r2](double w) { return column_kernel<double>(p, w * w, r2); }, w_lo, w_hi, rel_tol_);
  return -prefactor_ * std::numbers::pi * integral;
}

RadialAxialForce HamakerField::force(FieldPoint pt) const {
  return force_impl(prefactor_, geom_, pt, rel_tol_);
}

const char* to_string(HamakerMode mode) {
  return mode == HamakerMode::PaperLiteral ? "paper-literal" : "planar-consistent";
}

HamakerMode hamaker_mode_from_string(const std::string& s) {
  if (s == "paper-literal") return HamakerMode::PaperLiteral;
  if (s == "planar-consistent") return HamakerMode::PlanarConsistent;
  throw std::invalid_argument("unknown hamaker mode '" + s + "'");
}

namespace detail {

double hamaker_ring_kernel(double r, double rho, double w) {
  const double a = r * r + rho * rho + w * w;
  const double b = 2.0 * r * rho;
  const double lo = (a - b) * (a + b);
  return std::numbers::pi * (2.0 * a * a + b * b) / (lo * lo * std::sqrt(lo));
}

double hamaker_column_kernel(double rho, double w, double hole_radius) {
  return column_kernel<double>(rho * rho, w * w, hole_radius * hole_radius);
}

}  // namespace detail

}  // namespace holeflux
