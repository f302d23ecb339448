#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "holeflux/dynamics.hpp"
#include "holeflux/species.hpp"

namespace holeflux {

enum class ReductionModel { Transverse, FullPotential };

const char* to_string(ReductionModel model);
ReductionModel reduction_model_from_string(const std::string& s);

struct HoleReductionResult {
  double delta_r = 0.0;        // m
  ReductionModel model = ReductionModel::Transverse;
  double beta_max = 0.0;       // rad, FullPotential only
  double bracket_width = 0.0;  // m
  bool degenerate = false;     // C3 = 0 (no absorption anywhere)
  // parameters the result was computed for
  std::string species;
  double wavelength = 0.0;  // m
  double thickness = 0.0;   // m
  double radius = 0.0;      // m
  HamakerMode hamaker_mode = HamakerMode::PaperLiteral;
  ForceModel force_model = ForceModel::Consistent;
};

// Raised when the outcome classification is not monotone across the scan
// bracket; carries the scan so callers can inspect it.
struct NonMonotoneError : std::runtime_error {
  NonMonotoneError(const std::string& what, std::vector<std::pair<double, OutcomeKind>> scan_)
      : std::runtime_error(what), scan(std::move(scan_)) {}
  std::vector<std::pair<double, OutcomeKind>> scan;  // (delta_r candidate, outcome)
};

struct ReductionConfig {
  double tolerance = 1e-12;  // bracket tolerance on delta_r, m (1e-3 nm)
  ForceModel force_model = ForceModel::Consistent;
  HamakerMode hamaker_mode = HamakerMode::PaperLiteral;
  int prescan_points = 32;  // FullPotential monotonicity pre-scan
  PropagationConfig propagation{};
};

// Critical hole reduction in the transverse model: the Delta R for which
// rho0 = R - Delta R separates transmitted from absorbed trajectories.
// Bisection bracket is [0, R/2].
HoleReductionResult critical_radius_transverse(const BeamState& beam, const HoleGeometry& geom,
                                               double c3, const ReductionConfig& cfg = {});

// Same search against the full Hamaker field with the deflection-angle cutoff:
// the flip is between Transmitted and not-Transmitted (absorbed or deflected
// beyond beta_max). A pre-scan guards against bisecting a non-monotone
// classification.
HoleReductionResult critical_radius_full(const BeamState& beam, const HoleGeometry& geom,
                                         double c3, double beta_max,
                                         const ReductionConfig& cfg = {});

struct SweepGrid {
  std::vector<std::string> species;    // "He" / "He*"
  std::vector<double> wavelengths;     // m, strictly increasing
  std::vector<double> thicknesses;     // m, strictly increasing
  std::vector<double> radii;           // m, as listed
};

struct SweepRow {
  std::string species;
  double wavelength = 0.0;  // m
  double thickness = 0.0;   // m
  double radius = 0.0;      // m
  ReductionModel model = ReductionModel::Transverse;
  double beta_max = 0.0;    // rad
  double delta_r = 0.0;     // m
  double bracket = 0.0;     // m
  std::string status;       // "ok" or the failure reason
  // derived quantities used by the scaling fit
  double c3 = 0.0;   // J m^3
  double tau = 0.0;  // s
};

struct SweepTable {
  std::vector<SweepRow> rows;
  ReductionModel model = ReductionModel::Transverse;
  double beta_max = 0.0;
  ReductionConfig config{};
  bool all_ok() const;
};

// Runs every grid cell (species x lambda x d x R); cells execute in parallel,
// the row order and contents are independent of the thread count. Individual
// cell failures are recorded in the row status and do not abort the sweep.
SweepTable sweep_delta_r(const SweepGrid& grid, ReductionModel model, double beta_max,
                         const ReductionConfig& cfg = {}, int threads = 1);

// CSV columns (species, lambda_nm, d_nm, R_nm, model, beta_mrad, delta_r_nm,
// bracket_nm, status).
void write_sweep_csv(std::ostream& os, const SweepTable& table);

struct ScalingFit {
  double k = 0.0;      // prefactor, SI
  double a_c3 = 0.0;   // exponent of C3
  double b_tau = 0.0;  // exponent of tau
};

// Least-squares fit of log dr = log k + a log C3 + b log tau over the ok rows
// of a transverse sweep. Requires variation in both regressors.
ScalingFit fit_scaling_law(const SweepTable& table);

}  // namespace holeflux
