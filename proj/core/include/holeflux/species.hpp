#pragma once

#include <string>

namespace holeflux {

// Atom species with its Casimir-Polder coupling to the membrane material
// (silicon nitride). Mass in kg, c3 in J m^3. He and He* share the same mass;
// metastability changes only the electronic state and therefore only c3.
struct AtomSpecies {
  std::string name;
  double mass;  // kg
  double c3;    // J m^3

  AtomSpecies(std::string name_, double mass_kg, double c3_si);

  static AtomSpecies helium();             // C3 = 0.1 meV nm^3
  static AtomSpecies metastable_helium();  // C3 = 4.1 meV nm^3
  static AtomSpecies from_name(const std::string& name);  // "He" | "He*"
};

// Membrane thickness d and hole radius R, both in metres.
struct HoleGeometry {
  double thickness;  // d, m
  double radius;     // R, m

  HoleGeometry(double thickness_m, double radius_m);
  static HoleGeometry from_nm(double d_nm, double r_nm);
};

// lambda_dB = h / (m v)
double de_broglie_wavelength(const AtomSpecies& species, double speed);

// v = h / (m lambda_dB)
double speed_from_wavelength(const AtomSpecies& species, double wavelength);

// Monochromatic beam of one species. Exactly one of wavelength/speed is the
// stored primary; the other is derived on access so that lambda * m * v == h
// holds to machine precision.
class BeamState {
 public:
  static BeamState from_speed(const AtomSpecies& species, double speed);
  static BeamState from_wavelength(const AtomSpecies& species, double wavelength);

  double wavelength() const;
  double speed() const;
  double momentum() const;    // p = h / lambda
  double wavenumber() const;  // k0 = 2 pi / lambda
  const AtomSpecies& species() const { return species_; }

 private:
  BeamState(AtomSpecies species, double primary, bool primary_is_wavelength);

  AtomSpecies species_;
  double primary_;
  bool primary_is_wavelength_;
};

}  // namespace holeflux
