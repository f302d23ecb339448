#include "holeflux/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holeflux {

double planar_potential(double c3, double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("planar_potential: wall distance must be positive");
  return -c3 / (zeta * zeta * zeta);
}

double hole_transverse_potential(double c3, const HoleGeometry& geom, double rho) {
  if (!(rho >= 0.0)) throw std::domain_error("hole_transverse_potential: rho must be >= 0");
  const double zeta = geom.radius - rho;
  if (!(zeta > 0.0)) throw WallContactError("hole_transverse_potential: rho >= R");
  return -c3 / (zeta * zeta * zeta);
}

double hole_transverse_force(double c3, const HoleGeometry& geom, double rho, ForceModel model) {
  if (!(rho >= 0.0)) throw std::domain_error("hole_transverse_force: rho must be >= 0");
  const double zeta = geom.radius - rho;
  if (!(zeta > 0.0)) throw WallContactError("hole_transverse_force: rho >= R");
  const double zeta4 = zeta * zeta * zeta * zeta;
  const double magnitude = 3.0 * c3 / zeta4;
  return model == ForceModel::Consistent ? magnitude : 0.25 * magnitude;
}

const char* to_string(ForceModel model) {
  return model == ForceModel::Consistent ? "consistent" : "paper-factor";
}

ForceModel force_model_from_string(const std::string& s) {
  if (s == "consistent") return ForceModel::Consistent;
  if (s == "paper-factor") return ForceModel::PaperFactor;
  throw std::invalid_argument("unknown force model '" + s + "'");
}

}  // namespace holeflux
