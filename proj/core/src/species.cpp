#include "holeflux/species.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "holeflux/units.hpp"

namespace holeflux {

namespace {
constexpr double k_helium_mass_u = 4.002602;  // same for He and He*
}

AtomSpecies::AtomSpecies(std::string name_, double mass_kg, double c3_si)
    : name(std::move(name_)), mass(mass_kg), c3(c3_si) {
  if (!(mass > 0.0)) throw std::domain_error("AtomSpecies: mass must be positive");
  if (!(c3 >= 0.0)) throw std::domain_error("AtomSpecies: C3 must be non-negative");
}

AtomSpecies AtomSpecies::helium() {
  return AtomSpecies("He", k_helium_mass_u * constants::atomic_mass_unit, c3_to_si(0.1));
}

AtomSpecies AtomSpecies::metastable_helium() {
  return AtomSpecies("He*", k_helium_mass_u * constants::atomic_mass_unit, c3_to_si(4.1));
}

AtomSpecies AtomSpecies::from_name(const std::string& name) {
  if (name == "He") return helium();
  if (name == "He*" || name == "He_star" || name == "Hestar") return metastable_helium();
  throw std::invalid_argument("AtomSpecies::from_name: unknown species '" + name + "'");
}

HoleGeometry::HoleGeometry(double thickness_m, double radius_m)
    : thickness(thickness_m), radius(radius_m) {
  if (!(thickness > 0.0)) throw std::domain_error("HoleGeometry: thickness must be positive");
  if (!(radius > 0.0)) throw std::domain_error("HoleGeometry: radius must be positive");
}

HoleGeometry HoleGeometry::from_nm(double d_nm, double r_nm) {
  return HoleGeometry(nm(d_nm), nm(r_nm));
}

double de_broglie_wavelength(const AtomSpecies& species, double speed) {
  if (!(speed > 0.0)) throw std::domain_error("de_broglie_wavelength: speed must be positive");
  return constants::planck / (species.mass * speed);
}

double speed_from_wavelength(const AtomSpecies& species, double wavelength) {
  if (!(wavelength > 0.0)) {
    throw std::domain_error("speed_from_wavelength: wavelength must be positive");
  }
  return constants::planck / (species.mass * wavelength);
}

BeamState::BeamState(AtomSpecies species, double primary, bool primary_is_wavelength)
    : species_(std::move(species)), primary_(primary), primary_is_wavelength_(primary_is_wavelength) {}

BeamState BeamState::from_speed(const AtomSpecies& species, double speed) {
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw std::domain_error("BeamState: speed must be positive and finite");
  }
  return BeamState(species, speed, false);
}

BeamState BeamState::from_wavelength(const AtomSpecies& species, double wavelength) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw std::domain_error("BeamState: wavelength must be positive and finite");
  }
  return BeamState(species, wavelength, true);
}

double BeamState::wavelength() const {
  return primary_is_wavelength_ ? primary_ : de_broglie_wavelength(species_, primary_);
}

double BeamState::speed() const {
  return primary_is_wavelength_ ? speed_from_wavelength(species_, primary_) : primary_;
}

double BeamState::momentum() const { return constants::planck / wavelength(); }

double BeamState::wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }

}  // namespace holeflux
