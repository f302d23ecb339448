#pragma once

#include <stdexcept>

#include "holeflux/species.hpp"

namespace holeflux {

// Signalled when an evaluation point touches (or penetrates) the membrane
// material, or comes closer to it than the configured contact distance.
struct WallContactError : std::domain_error {
  using std::domain_error::domain_error;
};

// Radial force law inside the hole.
//   Consistent  : F_rho = +3 C3 / (R - rho)^4, i.e. -dU/drho of the in-hole
//                 potential, pulling toward the wall (default).
//   PaperFactor : same direction, magnitude scaled by 1/4. Kept as a
//                 sensitivity flag; see README for why both exist.
enum class ForceModel { Consistent, PaperFactor };

// U = -C3 / zeta^3 for an atom at distance zeta from a plane surface.
double planar_potential(double c3, double zeta);

// In-hole transverse potential U = -C3 / (R - rho)^3, valid for |z| <= d/2.
double hole_transverse_potential(double c3, const HoleGeometry& geom, double rho);

// Radial force -dU/drho of the in-hole potential (see ForceModel). Positive
// values point outward, toward the wall.
double hole_transverse_force(double c3, const HoleGeometry& geom, double rho,
                             ForceModel model = ForceModel::Consistent);

const char* to_string(ForceModel model);
ForceModel force_model_from_string(const std::string& s);

}  // namespace holeflux
