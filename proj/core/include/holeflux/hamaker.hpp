#pragma once

#include <stdexcept>
#include <string>

#include "holeflux/potential.hpp"
#include "holeflux/species.hpp"

namespace holeflux {

// Prefactor of the pairwise (Hamaker) volume integral
//   U(r) = -prefactor * Int_membrane d^3 s / |s - r|^6 .
//   PaperLiteral     : prefactor = 9 C3 / pi. Over a half space this yields
//                      -1.5 C3 / zeta^3 and is exactly consistent with the
//                      closed-form eikonal phase used by `wave`.
//   PlanarConsistent : prefactor = 6 C3 / pi, reproducing -C3 / zeta^3 in the
//                      half-space limit. Used for physical-limit checks.
enum class HamakerMode { PaperLiteral, PlanarConsistent };

// Raised when an adaptive quadrature cannot reach its requested tolerance.
struct ToleranceNotMetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Axisymmetric field point: radial distance rho >= 0 and axial coordinate z.
// The membrane occupies r >= R, |z| <= d/2.
struct FieldPoint {
  double rho;
  double z;
};

double hamaker_prefactor(double c3, HamakerMode mode);

// Signed distance from a field point to the membrane surface; negative inside
// the material. Pieces: bore wall, faces, edge circle.
double surface_distance(const HoleGeometry& geom, FieldPoint pt);

struct RadialAxialForce {
  double f_rho;  // positive = outward, toward the bore wall
  double f_z;
};

inline constexpr double k_default_force_epsilon = 0.05e-9;  // m
inline constexpr double k_default_fd_step = 0.01e-9;        // m

// Pairwise-summation potential of the holed membrane at `pt`. The angular and
// radial integrals are reduced to closed form; a single adaptive quadrature
// over the source-slab axis remains. Throws std::domain_error for points
// inside the material.
double hamaker_potential(double c3, const HoleGeometry& geom, HamakerMode mode,
                         FieldPoint pt, double rel_tol = 1e-9);

// -grad U via the differentiated semi-analytic kernel (dual-number pass for
// the radial derivative; the axial derivative is closed-form). Throws
// WallContactError within `contact_epsilon` of the surface.
RadialAxialForce hamaker_force(double c3, const HoleGeometry& geom, HamakerMode mode,
                               FieldPoint pt, double contact_epsilon = k_default_force_epsilon,
                               double rel_tol = 1e-9);

// Bound field evaluator for trajectory integration: caches the prefactor and
// skips the contact check (the propagator handles contact through its event
// function). Pure value type, safe to copy across threads.
class HamakerField {
 public:
  HamakerField(double c3, const HoleGeometry& geom, HamakerMode mode, double rel_tol = 1e-9);

  double potential(FieldPoint pt) const;
  RadialAxialForce force(FieldPoint pt) const;
  const HoleGeometry& geometry() const { return geom_; }

 private:
  HoleGeometry geom_;
  double prefactor_;
  double rel_tol_;
};

const char* to_string(HamakerMode mode);
HamakerMode hamaker_mode_from_string(const std::string& s);

namespace detail {
// phi-reduced ring kernel: Int_0^{2pi} dphi / |s - r|^6 for a source ring of
// radius r at axial offset w from the field point (rho, .). Exposed for the
// 2-D quadrature cross-check in the test suite.
double hamaker_ring_kernel(double r, double rho, double w);

// (r, phi)-reduced column kernel g(rho, w): Int_R^inf r dr of the ring kernel
// over the membrane annulus, divided by pi. U = -pref * pi * Int g dw.
double hamaker_column_kernel(double rho, double w, double hole_radius);
}  // namespace detail

}  // namespace holeflux
