#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "holeflux/hamaker.hpp"
#include "holeflux/numerics/ode.hpp"
#include "holeflux/potential.hpp"
#include "holeflux/species.hpp"

namespace holeflux {

enum class OutcomeKind { Transmitted, Absorbed, DeflectedBeyondBeta };

struct ExitState {
  double rho;
  double z;
  double v_rho;
  double v_z;
};

struct TrajectoryOutcome {
  OutcomeKind kind = OutcomeKind::Transmitted;
  std::optional<ExitState> exit_state;    // set when not absorbed
  std::optional<double> absorption_z;     // set when absorbed
  double deflection_angle = 0.0;          // atan(v_rho / v_z) at termination, rad
};

struct TrajectorySample {
  double t;
  double rho;
  double z;
  double v_rho;
  double v_z;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // strictly increasing in t
  TrajectoryOutcome outcome;
};

struct PropagationError : std::runtime_error {
  PropagationError(const std::string& what, TrajectorySample last)
      : std::runtime_error(what), last_state(last) {}
  TrajectorySample last_state;
};

struct PropagationConfig {
  double force_epsilon = k_default_force_epsilon;  // wall-contact distance, m
  double z_pad_factor = 5.0;                       // full-model start/end at -+(d/2 + z_pad_factor*d)
  num::OdeConfig ode{};
};

// tau = d m lambda / h = d / v
double transit_time(const HoleGeometry& geom, const BeamState& beam);

// Transverse in-hole model: z(t) = v t - d/2 computed analytically, radial
// motion integrated under hole_transverse_force until t = tau (Transmitted)
// or rho reaches R - force_epsilon (Absorbed).
Trajectory propagate_transverse(const BeamState& beam, const HoleGeometry& geom, double c3,
                                double rho0, ForceModel force_model = ForceModel::Consistent,
                                const PropagationConfig& cfg = {});

// Full 2-D axisymmetric motion in the Hamaker field from z_start to z_end
// (defaults: -+(d/2 + z_pad_factor * d)). Terminates on wall contact or on
// crossing z_end; the returned outcome carries the raw exit state, deflection
// classification is applied afterwards via classify_outcome.
Trajectory propagate_full(const BeamState& beam, const HoleGeometry& geom, double c3,
                          HamakerMode mode, double rho0, const PropagationConfig& cfg = {},
                          std::optional<double> z_start = {}, std::optional<double> z_end = {});

// Absorbed stays Absorbed; otherwise DeflectedBeyondBeta when
// atan(v_rho / v_z) > beta_max, Transmitted on the boundary (inclusive).
TrajectoryOutcome classify_outcome(const Trajectory& traj, double beta_max);

const char* to_string(OutcomeKind kind);

// CSV dump, columns (t_s, rho_nm, z_nm, v_rho_m_s, v_z_m_s, outcome); multiple
// trajectories are emitted as blank-line separated blocks. When given,
// block_labels[i] is written as a '# ...' comment above block i.
void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajectories,
                            std::span<const std::string> block_labels = {});

}  // namespace holeflux
