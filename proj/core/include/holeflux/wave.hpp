#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "holeflux/dynamics.hpp"
#include "holeflux/hamaker.hpp"
#include "holeflux/species.hpp"

namespace holeflux {

struct UndefinedPhaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form eikonal phase, evaluated through the complete elliptic
// integrals at modulus 2 sqrt(lambda) / (lambda + 1), lambda = rho / R.
// Sign convention: phi = -(1/hbar) Int U dt > 0 for the attractive potential.
double phase_eikonal_closed(double rho, const BeamState& beam, const HoleGeometry& geom,
                            double c3);

// Same phase from the straight-line integral -(m lambda_dB / 2 pi hbar^2)
// Int U(rho, z) dz of the Hamaker potential, truncated at |z| = 5 d + 6 R
// (relative truncation error below ~1e-3 for the supported geometry range).
double phase_eikonal_numeric(double rho, const BeamState& beam, const HoleGeometry& geom,
                             double c3, HamakerMode mode, double rel_tol = 1e-6);

// phi = -(1/hbar) Int U[r(t)] dt along a transmitted trajectory, by Gauss
// quadrature on Hermite-interpolated samples. Throws UndefinedPhaseError for
// absorbed trajectories.
double phase_along_trajectory(const Trajectory& traj, double c3, const HoleGeometry& geom,
                              HamakerMode mode);

enum class PhaseMethod { ClosedForm, NumericLineIntegral, TrajectoryIntegral };

// Tabulated phi(rho) on [0, R - delta_r]; eval() interpolates linearly.
struct PhaseProfile {
  std::vector<double> rho;  // m, strictly increasing
  std::vector<double> phi;  // rad
  PhaseMethod method = PhaseMethod::ClosedForm;

  double eval(double rho_query) const;
};

// t(rho) = exp(i phi(rho)) inside the effective radius R - delta_r, else 0.
std::complex<double> transmission_function(double rho, double r_effective,
                                           const PhaseProfile& phase);

struct DiffractionSetup {
  double source_distance;    // L1, m
  double detector_distance;  // L2, m
  double wavenumber;         // k0 = 2 pi / lambda_dB, 1/m

  DiffractionSetup(double l1, double l2, double k0);
};

// N_F = R^2 / (lambda L2); << 1 in the far field.
double fresnel_number(const DiffractionSetup& setup, double aperture_radius);

// Radius of the first Airy intensity zero on the detector.
double airy_first_zero(const DiffractionSetup& setup, double aperture_radius);

struct DiffractionPattern {
  std::vector<double> p;                        // detector radii, m
  std::vector<std::complex<double>> amplitude;  // Int rho t(rho) J0(k0 p rho / L2) drho
  std::vector<double> intensity;                // |amplitude|^2 (unnormalized)
  std::vector<unsigned char> converged;         // per-sample quadrature flag
  double normalization = 1.0;                   // divisor applied on output

  bool all_converged() const;
};

using ApertureFunction = std::function<std::complex<double>(double)>;

// Radial Hankel-type integral over [0, aperture_radius] for every detector
// radius in p_samples. Panels are capped at 1/8 of the local J0 oscillation
// period, then refined adaptively.
DiffractionPattern fraunhofer_pattern(const ApertureFunction& t, double aperture_radius,
                                      const DiffractionSetup& setup,
                                      std::span<const double> p_samples, int threads = 1);

// Ratio of Int_0^{p_max} I(p) p dp between `pattern` and `reference`; both
// must share the same detector grid.
double transmission_rate(const DiffractionPattern& pattern, const DiffractionPattern& reference,
                         double p_max);

// Uniform detector grid [0, p_max] with n samples.
std::vector<double> detector_grid(double p_max, int n);

}  // namespace holeflux
