#include "holeflux/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holeflux/numerics/bessel.hpp"
#include "holeflux/numerics/elliptic.hpp"
#include "holeflux/numerics/gauss_kronrod.hpp"
#include "holeflux/parallel.hpp"
#include "holeflux/units.hpp"

namespace holeflux {

namespace {

constexpr double k_j11 = 3.831705970207512;  // first zero of J1

double eikonal_prefactor(const BeamState& beam) {
  const double m = beam.species().mass;
  return m * beam.wavelength() /
         (2.0 * std::numbers::pi * constants::hbar * constants::hbar);
}

}  // namespace

double phase_eikonal_closed(double rho, const BeamState& beam, const HoleGeometry& geom,
                            double c3) {
  if (!(rho >= 0.0) || rho >= geom.radius) {
    throw std::domain_error("phase_eikonal_closed: rho must lie in [0, R)");
  }
  const double R = geom.radius;
  const double lam = rho / R;
  const double modulus = 2.0 * std::sqrt(lam) / (lam + 1.0);
  const double K = num::elliptic_K(modulus);
  const double E = num::elliptic_E(modulus);
  const double lm1 = lam - 1.0;
  const double lp1 = lam + 1.0;
  const double bracket = lm1 * lm1 * K - (lam * lam + 7.0) * E;
  const double printed = -eikonal_prefactor(beam) * 3.0 * c3 * geom.thickness /
                         (4.0 * R * R * R * lm1 * lm1 * lm1 * lp1 * lp1) * bracket;
  // The attractive potential accumulates positive phase; flip the printed sign.
  return -printed;
}

double phase_eikonal_numeric(double rho, const BeamState& beam, const HoleGeometry& geom,
                             double c3, HamakerMode mode, double rel_tol) {
  if (!(rho >= 0.0) || rho >= geom.radius) {
    throw std::domain_error("phase_eikonal_numeric: rho must lie in [0, R)");
  }
  const HamakerField field(c3, geom, mode, 0.01 * rel_tol);
  const double z_cut = 5.0 * geom.thickness + 6.0 * geom.radius;
  auto integrand = [&](double z) { return field.potential({rho, z}); };
  auto r = num::adaptive_gk15(integrand, -z_cut, z_cut, 1e-300, rel_tol, 2000);
  if (!r.converged) {
    throw ToleranceNotMetError("phase_eikonal_numeric: line integral did not converge");
  }
  return -eikonal_prefactor(beam) * r.value;
}

double phase_along_trajectory(const Trajectory& traj, double c3, const HoleGeometry& geom,
                              HamakerMode mode) {
  if (traj.outcome.kind == OutcomeKind::Absorbed) {
    throw UndefinedPhaseError("phase_along_trajectory: absorbed trajectory has no phase");
  }
  if (traj.samples.size() < 2) {
    throw std::invalid_argument("phase_along_trajectory: trajectory too short");
  }
  const HamakerField field(c3, geom, mode, 1e-8);

  // 2-point Gauss per sample interval on cubic-Hermite interpolated states.
  constexpr double gauss_offset = 0.28867513459481287;  // 1/(2 sqrt(3))
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& s0 = traj.samples[i];
    const auto& s1 = traj.samples[i + 1];
    const double h = s1.t - s0.t;
    if (!(h > 0.0)) continue;
    double value = 0.0;
    for (const double sign : {-1.0, 1.0}) {
      const double u = 0.5 + sign * gauss_offset;
      const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
      const double h10 = u * (1 - u) * (1 - u);
      const double h01 = u * u * (3 - 2 * u);
      const double h11 = u * u * (u - 1);
      const double rho = h00 * s0.rho + h10 * h * s0.v_rho + h01 * s1.rho + h11 * h * s1.v_rho;
      const double z = h00 * s0.z + h10 * h * s0.v_z + h01 * s1.z + h11 * h * s1.v_z;
      value += field.potential({std::max(rho, 0.0), z});
    }
    integral += 0.5 * h * value;
  }
  return -integral / constants::hbar;
}

double PhaseProfile::eval(double rho_query) const {
  if (rho.empty() || rho.size() != phi.size()) {
    throw std::logic_error("PhaseProfile: empty or inconsistent profile");
  }
  if (rho_query <= rho.front()) return phi.front();
  if (rho_query >= rho.back()) return phi.back();
  const auto it = std::upper_bound(rho.begin(), rho.end(), rho_query);
  const std::size_t i = static_cast<std::size_t>(it - rho.begin()) - 1;
  const double u = (rho_query - rho[i]) / (rho[i + 1] - rho[i]);
  return phi[i] + u * (phi[i + 1] - phi[i]);
}

std::complex<double> transmission_function(double rho, double r_effective,
                                           const PhaseProfile& phase) {
  if (!(rho >= 0.0)) throw std::domain_error("transmission_function: rho must be >= 0");
  if (rho >= r_effective) return {0.0, 0.0};
  return std::polar(1.0, phase.eval(rho));
}

DiffractionSetup::DiffractionSetup(double l1, double l2, double k0)
    : source_distance(l1), detector_distance(l2), wavenumber(k0) {
  if (!(l1 > 0.0) || !(l2 > 0.0) || !(k0 > 0.0)) {
    throw std::domain_error("DiffractionSetup: L1, L2 and k0 must be positive");
  }
}

double fresnel_number(const DiffractionSetup& setup, double aperture_radius) {
  const double lambda = 2.0 * std::numbers::pi / setup.wavenumber;
  return aperture_radius * aperture_radius / (lambda * setup.detector_distance);
}

double airy_first_zero(const DiffractionSetup& setup, double aperture_radius) {
  return k_j11 * setup.detector_distance / (setup.wavenumber * aperture_radius);
}

bool DiffractionPattern::all_converged() const {
  for (unsigned char c : converged) {
    if (!c) return false;
  }
  return true;
}

DiffractionPattern fraunhofer_pattern(const ApertureFunction& t, double aperture_radius,
                                      const DiffractionSetup& setup,
                                      std::span<const double> p_samples, int threads) {
  if (!(aperture_radius > 0.0)) {
    throw std::domain_error("fraunhofer_pattern: aperture radius must be positive");
  }
  DiffractionPattern pattern;
  pattern.p.assign(p_samples.begin(), p_samples.end());
  pattern.amplitude.resize(p_samples.size());
  pattern.intensity.resize(p_samples.size());
  pattern.converged.assign(p_samples.size(), 1);

  const double abs_floor = 1e-16 * aperture_radius * aperture_radius;

  parallel_for(p_samples.size(), threads, [&](std::size_t idx) {
    const double alpha = setup.wavenumber * p_samples[idx] / setup.detector_distance;
    auto integrand = [&](double rho) -> std::complex<double> {
      return rho * t(rho) * num::bessel_J0(alpha * rho);
    };
    // Panels no wider than 1/8 of the local J0 period, refined adaptively.
    const double period = alpha > 0.0 ? 2.0 * std::numbers::pi / alpha : 0.0;
    const double max_width = period > 0.0 ? std::min(aperture_radius, period / 8.0)
                                          : aperture_radius;
    const int n_panels = std::max(1, static_cast<int>(std::ceil(aperture_radius / max_width)));
    std::complex<double> total = 0.0;
    bool ok = true;
    for (int k = 0; k < n_panels; ++k) {
      const double a = aperture_radius * static_cast<double>(k) / n_panels;
      const double b = aperture_radius * static_cast<double>(k + 1) / n_panels;
      auto r = num::adaptive_gk15(integrand, a, b, abs_floor / n_panels, 1e-11, 400);
      total += r.value;
      ok = ok && r.converged;
    }
    pattern.amplitude[idx] = total;
    pattern.intensity[idx] = std::norm(total);
    pattern.converged[idx] = ok ? 1 : 0;
  });
  return pattern;
}

double transmission_rate(const DiffractionPattern& pattern, const DiffractionPattern& reference,
                         double p_max) {
  if (pattern.p.size() != reference.p.size()) {
    throw std::invalid_argument("transmission_rate: detector grids differ in size");
  }
  for (std::size_t i = 0; i < pattern.p.size(); ++i) {
    if (pattern.p[i] != reference.p[i]) {
      throw std::invalid_argument("transmission_rate: detector grids differ");
    }
  }
  if (pattern.p.size() < 3) {
    throw std::invalid_argument("transmission_rate: grid too small");
  }
  if (!(p_max > 0.0) || p_max > pattern.p.back() * (1.0 + 1e-12)) {
    throw std::invalid_argument("transmission_rate: p_max outside detector grid");
  }

  auto weighted_integral = [p_max](const DiffractionPattern& pat) {
    // composite Simpson on the uniform grid, trapezoid for a trailing odd cell
    std::size_t n_last = pat.p.size() - 1;
    while (n_last > 0 && pat.p[n_last] > p_max * (1.0 + 1e-12)) --n_last;
    auto f = [&pat](std::size_t i) { return pat.intensity[i] * pat.p[i]; };
    double sum = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n_last; i += 2) {
      const double h = pat.p[i + 1] - pat.p[i];
      sum += h / 3.0 * (f(i) + 4.0 * f(i + 1) + f(i + 2));
    }
    if (i + 1 <= n_last) {
      sum += 0.5 * (pat.p[i + 1] - pat.p[i]) * (f(i) + f(i + 1));
    }
    return sum;
  };

  const double denom = weighted_integral(reference);
  if (denom == 0.0) throw std::invalid_argument("transmission_rate: reference integral is zero");
  return weighted_integral(pattern) / denom;
}

std::vector<double> detector_grid(double p_max, int n) {
  if (!(p_max > 0.0) || n < 2) throw std::invalid_argument("detector_grid: bad parameters");
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = p_max * static_cast<double>(i) / (n - 1);
  return p;
}

}  // namespace holeflux
