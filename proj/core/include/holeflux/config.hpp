#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "holeflux/holered.hpp"
#include "holeflux/species.hpp"
#include "holeflux/wave.hpp"

namespace holeflux {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value run configuration shared by every CLI command. All keys
// are documented in the README; the sidecar written next to each output file
// is itself a valid config and reproduces the run exactly.
struct RunConfig {
  // beam & geometry (exactly one of lambda_nm / speed_m_s is the primary;
  // setting one to a positive value clears the other)
  std::string species = "He*";
  double lambda_nm = 0.1;
  double speed_m_s = 0.0;
  double d_nm = 50.0;
  double R_nm = 25.0;

  // models
  std::string model = "transverse";           // transverse | full
  std::string hamaker_mode = "paper-literal"; // paper-literal | planar-consistent
  std::string force_model = "consistent";     // consistent | paper-factor
  double beta_mrad = 10.0;

  // numerics
  double delta_r_tol_nm = 1e-3;
  double force_epsilon_nm = 0.05;
  double z_pad_factor = 5.0;
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-12;

  // diffraction
  double L1_m = 1.0;
  double L2_um = 50.0;
  double p_max_airy = 20.0;  // detector window in units of the bare first Airy zero
  int detector_samples = 801;
  int bare_only = 0;

  // trajectories / phase output
  int n_trajectories = 41;
  int phase_samples = 201;

  // sweep grid
  std::string species_list = "He*,He";
  double lambda_min_nm = 0.05;
  double lambda_max_nm = 1.0;
  int lambda_points = 20;
  std::string lambda_scale = "log";  // log | lin
  double d_min_nm = 5.0;
  double d_max_nm = 50.0;
  int d_points = 10;
  std::string R_list_nm = "25";

  int threads = 0;  // 0 = hardware concurrency (capped by HOLEFLUX_THREADS)

  // --- key/value surface ---
  static const std::vector<std::string>& keys();
  void apply_key(const std::string& key, const std::string& value);
  std::string get_key(const std::string& key) const;
  void write(std::ostream& os) const;

  // Overlays every key = value pair of `path` onto this config.
  void load_file(const std::string& path);

  // Built-in named configurations reproducing the library's reference runs.
  void apply_preset(const std::string& name);

  void validate() const;

  // --- materialized objects ---
  AtomSpecies make_species() const;
  BeamState make_beam() const;
  HoleGeometry make_geometry() const;
  ReductionConfig make_reduction_config() const;
  SweepGrid make_sweep_grid() const;
  DiffractionSetup make_diffraction_setup() const;
  ReductionModel reduction_model() const;
  int effective_threads() const;  // applies HOLEFLUX_THREADS cap
};

std::vector<double> parse_double_list(const std::string& csv);

}  // namespace holeflux
