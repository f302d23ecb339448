#include "holeflux/units.hpp"

#include <cmath>
#include <stdexcept>

namespace holeflux {

const UnitRegistry& UnitRegistry::si() {
  static const UnitRegistry registry{};
  return registry;
}

double c3_to_si(double c3_mev_nm3) {
  if (c3_mev_nm3 < 0.0) {
    throw std::domain_error("c3_to_si: C3 must be non-negative");
  }
  const double nm3 = constants::nm_to_m * constants::nm_to_m * constants::nm_to_m;
  return c3_mev_nm3 * constants::mev_to_joule * nm3;
}

double c3_to_mev_nm3(double c3_si) {
  const double nm3 = constants::nm_to_m * constants::nm_to_m * constants::nm_to_m;
  return c3_si / (constants::mev_to_joule * nm3);
}

}  // namespace holeflux
