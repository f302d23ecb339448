#include "holeflux/holered.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "holeflux/numerics/bisect.hpp"
#include "holeflux/parallel.hpp"
#include "holeflux/units.hpp"

namespace holeflux {

const char* to_string(ReductionModel model) {
  return model == ReductionModel::Transverse ? "transverse" : "full";
}

ReductionModel reduction_model_from_string(const std::string& s) {
  if (s == "transverse") return ReductionModel::Transverse;
  if (s == "full" || s == "full-potential") return ReductionModel::FullPotential;
  throw std::invalid_argument("unknown reduction model '" + s + "'");
}

namespace {

HoleReductionResult make_result(const BeamState& beam, const HoleGeometry& geom,
                                ReductionModel model, double beta_max,
                                const ReductionConfig& cfg) {
  HoleReductionResult r;
  r.model = model;
  r.beta_max = beta_max;
  r.species = beam.species().name;
  r.wavelength = beam.wavelength();
  r.thickness = geom.thickness;
  r.radius = geom.radius;
  r.hamaker_mode = cfg.hamaker_mode;
  r.force_model = cfg.force_model;
  return r;
}

}  // namespace

HoleReductionResult critical_radius_transverse(const BeamState& beam, const HoleGeometry& geom,
                                               double c3, const ReductionConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("critical_radius_transverse: tolerance must be positive");
  }
  HoleReductionResult result = make_result(beam, geom, ReductionModel::Transverse, 0.0, cfg);
  if (c3 == 0.0) {
    result.degenerate = true;
    return result;
  }

  // absorbed(x): does the trajectory entering at rho0 = R - x hit the wall?
  auto absorbed = [&](double x) -> bool {
    if (x <= cfg.propagation.force_epsilon) return true;  // starts in the contact band
    const auto traj =
        propagate_transverse(beam, geom, c3, geom.radius - x, cfg.force_model, cfg.propagation);
    return traj.outcome.kind == OutcomeKind::Absorbed;
  };

  const double hi = 0.5 * geom.radius;
  if (absorbed(hi)) {
    throw std::runtime_error("critical_radius_transverse: delta_r exceeds bracket [0, R/2]");
  }
  const auto b = num::bisect_predicate(absorbed, 0.0, hi, cfg.tolerance);
  result.delta_r = b.value;
  result.bracket_width = b.bracket_width;
  return result;
}

HoleReductionResult critical_radius_full(const BeamState& beam, const HoleGeometry& geom,
                                         double c3, double beta_max,
                                         const ReductionConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) {
    throw std::invalid_argument("critical_radius_full: tolerance must be positive");
  }
  if (!(beta_max >= 1e-3 && beta_max <= 0.1)) {
    throw std::invalid_argument("critical_radius_full: beta_max must lie in [1e-3, 0.1] rad");
  }
  HoleReductionResult result = make_result(beam, geom, ReductionModel::FullPotential, beta_max, cfg);
  if (c3 == 0.0) {
    result.degenerate = true;
    return result;
  }

  auto outcome_at = [&](double x) -> OutcomeKind {
    if (x <= cfg.propagation.force_epsilon) return OutcomeKind::Absorbed;
    const auto traj =
        propagate_full(beam, geom, c3, cfg.hamaker_mode, geom.radius - x, cfg.propagation);
    return classify_outcome(traj, beta_max).kind;
  };
  auto blocked = [&](double x) { return outcome_at(x) != OutcomeKind::Transmitted; };

  // Pre-scan for monotonicity: the cutoff could in principle carve islands.
  const double hi = 0.5 * geom.radius;
  const int n = std::max(cfg.prescan_points, 2);
  std::vector<std::pair<double, OutcomeKind>> scan;
  scan.reserve(n + 1);
  scan.emplace_back(0.0, OutcomeKind::Absorbed);
  for (int i = 1; i <= n; ++i) {
    const double x = hi * static_cast<double>(i) / n;
    scan.emplace_back(x, outcome_at(x));
  }
  int flips = 0;
  int flip_index = -1;
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
    const bool b0 = scan[i].second != OutcomeKind::Transmitted;
    const bool b1 = scan[i + 1].second != OutcomeKind::Transmitted;
    if (b0 != b1) {
      ++flips;
      flip_index = static_cast<int>(i);
    }
  }
  if (flips == 0) {
    throw NonMonotoneError(
        "critical_radius_full: no transmitted/blocked flip inside bracket [0, R/2]", scan);
  }
  if (flips > 1) {
    throw NonMonotoneError("critical_radius_full: classification is not monotone across bracket",
                           scan);
  }

  const auto b = num::bisect_predicate(blocked, scan[flip_index].first,
                                       scan[flip_index + 1].first, cfg.tolerance);
  result.delta_r = b.value;
  result.bracket_width = b.bracket_width;
  return result;
}

bool SweepTable::all_ok() const {
  for (const auto& row : rows) {
    if (row.status != "ok") return false;
  }
  return true;
}

SweepTable sweep_delta_r(const SweepGrid& grid, ReductionModel model, double beta_max,
                         const ReductionConfig& cfg, int threads) {
  if (grid.species.empty() || grid.wavelengths.empty() || grid.thicknesses.empty() ||
      grid.radii.empty()) {
    throw std::invalid_argument("sweep_delta_r: empty grid");
  }
  for (std::size_t i = 1; i < grid.wavelengths.size(); ++i) {
    if (!(grid.wavelengths[i] > grid.wavelengths[i - 1])) {
      throw std::invalid_argument("sweep_delta_r: wavelengths must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < grid.thicknesses.size(); ++i) {
    if (!(grid.thicknesses[i] > grid.thicknesses[i - 1])) {
      throw std::invalid_argument("sweep_delta_r: thicknesses must be strictly increasing");
    }
  }

  SweepTable table;
  table.model = model;
  table.beta_max = beta_max;
  table.config = cfg;
  for (const auto& sp : grid.species) {
    for (double lambda : grid.wavelengths) {
      for (double d : grid.thicknesses) {
        for (double R : grid.radii) {
          SweepRow row;
          row.species = sp;
          row.wavelength = lambda;
          row.thickness = d;
          row.radius = R;
          row.model = model;
          row.beta_max = beta_max;
          table.rows.push_back(row);
        }
      }
    }
  }

  parallel_for(table.rows.size(), threads, [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    try {
      const AtomSpecies species = AtomSpecies::from_name(row.species);
      const BeamState beam = BeamState::from_wavelength(species, row.wavelength);
      const HoleGeometry geom(row.thickness, row.radius);
      const HoleReductionResult r =
          model == ReductionModel::Transverse
              ? critical_radius_transverse(beam, geom, species.c3, cfg)
              : critical_radius_full(beam, geom, species.c3, beta_max, cfg);
      row.delta_r = r.delta_r;
      row.bracket = r.bracket_width;
      row.c3 = species.c3;
      row.tau = transit_time(geom, beam);
      row.status = r.degenerate ? "degenerate" : "ok";
    } catch (const std::exception& e) {
      row.status = e.what();
    }
  });
  return table;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "species,lambda_nm,d_nm,R_nm,model,beta_mrad,delta_r_nm,bracket_nm,status\n";
  char buf[256];
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,%s,%.12g,%.12g,%.12g,%s\n",
                  row.species.c_str(), to_nm(row.wavelength), to_nm(row.thickness),
                  to_nm(row.radius), to_string(row.model), row.beta_max * 1e3,
                  to_nm(row.delta_r), to_nm(row.bracket), row.status.c_str());
    os << buf;
  }
}

ScalingFit fit_scaling_law(const SweepTable& table) {
  if (table.model != ReductionModel::Transverse) {
    throw std::invalid_argument("fit_scaling_law: requires a Transverse-model table");
  }
  std::vector<const SweepRow*> rows;
  for (const auto& row : table.rows) {
    if (row.status == "ok" && row.delta_r > 0.0) rows.push_back(&row);
  }
  if (rows.size() < 10) {
    throw std::invalid_argument("fit_scaling_law: need at least 10 ok rows");
  }
  const double R0 = rows.front()->radius;
  for (const auto* row : rows) {
    if (row->radius != R0) {
      throw std::invalid_argument("fit_scaling_law: table must hold a single hole radius");
    }
  }

  // Centered least squares for y = c0 + c1 x1 + c2 x2; centering keeps the
  // normal equations well conditioned (log C3 in SI is around -110).
  const double n = static_cast<double>(rows.size());
  double x1_mean = 0.0, x2_mean = 0.0, y_mean = 0.0;
  for (const auto* row : rows) {
    x1_mean += std::log(row->c3);
    x2_mean += std::log(row->tau);
    y_mean += std::log(row->delta_r);
  }
  x1_mean /= n;
  x2_mean /= n;
  y_mean /= n;

  double s11 = 0.0, s12 = 0.0, s22 = 0.0, sy1 = 0.0, sy2 = 0.0;
  for (const auto* row : rows) {
    const double u1 = std::log(row->c3) - x1_mean;
    const double u2 = std::log(row->tau) - x2_mean;
    const double w = std::log(row->delta_r) - y_mean;
    s11 += u1 * u1;
    s12 += u1 * u2;
    s22 += u2 * u2;
    sy1 += u1 * w;
    sy2 += u2 * w;
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(s11 > 0.0) || !(s22 > 0.0) || !(det > 1e-10 * s11 * s22)) {
    throw std::runtime_error("fit_scaling_law: rank-deficient design (no regressor variation)");
  }
  const double c1 = (sy1 * s22 - sy2 * s12) / det;
  const double c2 = (sy2 * s11 - sy1 * s12) / det;
  const double c0 = y_mean - c1 * x1_mean - c2 * x2_mean;
  return {std::exp(c0), c1, c2};
}

}  // namespace holeflux
