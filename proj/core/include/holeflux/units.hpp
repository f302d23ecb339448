#pragma once

#include <numbers>

namespace holeflux {

// Fixed physical constants. h and the meV->J factor are exact by the 2019 SI
// redefinition; the atomic mass unit is CODATA 2018. Pinning them keeps golden
// output files reproducible across toolchains.
namespace constants {
inline constexpr double planck = 6.62607015e-34;                       // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);      // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;          // kg
inline constexpr double mev_to_joule = 1.602176634e-22;                // J / meV
inline constexpr double nm_to_m = 1e-9;                                // m / nm
}  // namespace constants

// All internal computation is SI; external interfaces (CLI, CSV) speak
// nm, meV nm^3, m/s, mrad. These helpers are the only conversion points.
struct UnitRegistry {
  double h = constants::planck;
  double hbar = constants::hbar;
  double amu = constants::atomic_mass_unit;
  double mev_to_joule = constants::mev_to_joule;
  double nm_to_m = constants::nm_to_m;

  static const UnitRegistry& si();
};

// meV nm^3 -> J m^3
double c3_to_si(double c3_mev_nm3);

// J m^3 -> meV nm^3
double c3_to_mev_nm3(double c3_si);

inline double nm(double value_nm) { return value_nm * constants::nm_to_m; }
inline double to_nm(double value_m) { return value_m / constants::nm_to_m; }

}  // namespace holeflux
