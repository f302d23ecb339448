#include "holeflux/dynamics.hpp"

#include <cmath>
#include <cstdio>

namespace holeflux {

double transit_time(const HoleGeometry& geom, const BeamState& beam) {
  return geom.thickness / beam.speed();
}

namespace {

// Keeps the radial RHS finite when a trial stage probes past the wall; the
// rejected-step machinery and the contact event keep accepted states outside.
double safe_transverse_accel(double c3, const HoleGeometry& geom, double rho, double mass,
                             ForceModel model) {
  const double zeta = geom.radius - rho;
  const double zeta_floor = 1e-13;  // 1e-4 nm, far below force_epsilon
  const double z = std::max(zeta, zeta_floor);
  const double magnitude = 3.0 * c3 / (z * z * z * z);
  return (model == ForceModel::Consistent ? magnitude : 0.25 * magnitude) / mass;
}

}  // namespace

Trajectory propagate_transverse(const BeamState& beam, const HoleGeometry& geom, double c3,
                                double rho0, ForceModel force_model,
                                const PropagationConfig& cfg) {
  if (!(rho0 >= 0.0) || rho0 >= geom.radius) {
    throw std::domain_error("propagate_transverse: rho0 must lie in [0, R)");
  }
  const double v = beam.speed();
  const double mass = beam.species().mass;
  const double tau = transit_time(geom, beam);
  const double half_d = 0.5 * geom.thickness;
  const double rho_wall = geom.radius - cfg.force_epsilon;

  Trajectory traj;
  auto z_of = [&](double t) { return v * t - half_d; };

  if (rho0 >= rho_wall) {  // starts inside the contact band
    traj.samples.push_back({0.0, rho0, -half_d, 0.0, v});
    traj.outcome.kind = OutcomeKind::Absorbed;
    traj.outcome.absorption_z = -half_d;
    return traj;
  }

  auto rhs = [&](double /*t*/, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = safe_transverse_accel(c3, geom, y[0], mass, force_model);
  };
  std::vector<num::OdeEvent<2>> events(1);
  events[0].value = [rho_wall](double, const std::array<double, 2>& y) {
    return y[0] - rho_wall;
  };
  events[0].terminal = true;
  events[0].direction = +1;

  num::OdeConfig ode_cfg = cfg.ode;
  ode_cfg.event_tolerance = std::min(ode_cfg.event_tolerance, 1e-4 * cfg.force_epsilon);
  auto sol = num::solve_ode<2>(rhs, {rho0, 0.0}, 0.0, tau, events, ode_cfg);

  for (const auto& s : sol.samples) {
    traj.samples.push_back({s.t, s.y[0], z_of(s.t), s.y[1], v});
  }
  const auto& last = traj.samples.back();

  switch (sol.status) {
    case num::OdeStatus::EventTerminated:
      traj.outcome.kind = OutcomeKind::Absorbed;
      traj.outcome.absorption_z = last.z;
      traj.outcome.deflection_angle = std::atan2(last.v_rho, last.v_z);
      break;
    case num::OdeStatus::ReachedEnd: {
      traj.outcome.kind = OutcomeKind::Transmitted;
      // exit z is +d/2 by definition of the transit
      traj.samples.back().z = half_d;
      traj.outcome.exit_state = ExitState{last.rho, half_d, last.v_rho, last.v_z};
      traj.outcome.deflection_angle = std::atan2(last.v_rho, last.v_z);
      break;
    }
    default:
      throw PropagationError("propagate_transverse: integrator failure", last);
  }
  return traj;
}

Trajectory propagate_full(const BeamState& beam, const HoleGeometry& geom, double c3,
                          HamakerMode mode, double rho0, const PropagationConfig& cfg,
                          std::optional<double> z_start_opt, std::optional<double> z_end_opt) {
  if (!(rho0 >= 0.0) || rho0 >= geom.radius) {
    throw std::domain_error("propagate_full: rho0 must lie in [0, R)");
  }
  const double v = beam.speed();
  const double mass = beam.species().mass;
  const double half_d = 0.5 * geom.thickness;
  const double z_pad = cfg.z_pad_factor * geom.thickness;
  const double z_start = z_start_opt.value_or(-half_d - z_pad);
  const double z_end = z_end_opt.value_or(half_d + z_pad);
  if (z_start > -half_d - z_pad || z_end < half_d + z_pad) {
    throw std::invalid_argument("propagate_full: window must cover the padded membrane");
  }

  const HamakerField field(c3, geom, mode);

  // y = (rho, z, v_rho, v_z)
  auto rhs = [&](double /*t*/, const std::array<double, 4>& y, std::array<double, 4>& dy) {
    dy[0] = y[2];
    dy[1] = y[3];
    FieldPoint pt{std::max(y[0], 0.0), y[1]};
    // Trial stages may poke into the contact band; clamp the probe onto a
    // shell slightly inside it so the RHS stays finite.
    const double dist = surface_distance(geom, pt);
    const double floor = 0.2 * cfg.force_epsilon;
    if (dist < floor) {
      const double half = 0.5 * geom.thickness;
      if (std::abs(pt.z) <= half) {
        pt.rho = geom.radius - floor;
      } else {
        pt.z = std::copysign(half + floor, pt.z);
      }
    }
    const RadialAxialForce f = field.force(pt);
    dy[2] = f.f_rho / mass;
    dy[3] = f.f_z / mass;
  };

  std::vector<num::OdeEvent<4>> events(2);
  const double eps = cfg.force_epsilon;
  events[0].value = [&geom, eps](double, const std::array<double, 4>& y) {
    return surface_distance(geom, {std::max(y[0], 0.0), y[1]}) - eps;
  };
  events[0].terminal = true;
  events[0].direction = -1;
  events[1].value = [z_end](double, const std::array<double, 4>& y) { return y[1] - z_end; };
  events[1].terminal = true;
  events[1].direction = +1;

  const double t_max = 3.0 * (z_end - z_start) / v;
  num::OdeConfig ode_cfg = cfg.ode;
  ode_cfg.event_tolerance = std::min(ode_cfg.event_tolerance, 1e-4 * cfg.force_epsilon);
  if (!std::isfinite(ode_cfg.max_step)) {
    ode_cfg.max_step = geom.thickness / v / 64.0;  // sampling density for phase integrals
  }
  auto sol = num::solve_ode<4>(rhs, {rho0, z_start, 0.0, v}, 0.0, t_max, events, ode_cfg);

  Trajectory traj;
  for (const auto& s : sol.samples) {
    traj.samples.push_back({s.t, s.y[0], s.y[1], s.y[2], s.y[3]});
  }
  const auto& last = traj.samples.back();

  if (sol.status == num::OdeStatus::EventTerminated && sol.terminal_event == 0) {
    traj.outcome.kind = OutcomeKind::Absorbed;
    traj.outcome.absorption_z = last.z;
    traj.outcome.deflection_angle = std::atan2(std::abs(last.v_rho), last.v_z);
  } else if (sol.status == num::OdeStatus::EventTerminated && sol.terminal_event == 1) {
    traj.outcome.kind = OutcomeKind::Transmitted;
    traj.outcome.exit_state = ExitState{last.rho, last.z, last.v_rho, last.v_z};
    traj.outcome.deflection_angle = std::atan2(std::abs(last.v_rho), last.v_z);
  } else {
    throw PropagationError("propagate_full: integrator failure before termination", last);
  }
  return traj;
}

TrajectoryOutcome classify_outcome(const Trajectory& traj, double beta_max) {
  if (!(beta_max > 0.0)) throw std::domain_error("classify_outcome: beta_max must be positive");
  TrajectoryOutcome out = traj.outcome;
  if (out.kind == OutcomeKind::Absorbed) return out;
  // tan(beta) == tan(beta_max) counts as transmitted (inclusive boundary).
  if (out.deflection_angle > beta_max) {
    out.kind = OutcomeKind::DeflectedBeyondBeta;
  } else {
    out.kind = OutcomeKind::Transmitted;
  }
  return out;
}

const char* to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Transmitted: return "transmitted";
    case OutcomeKind::Absorbed: return "absorbed";
    case OutcomeKind::DeflectedBeyondBeta: return "deflected";
  }
  return "unknown";
}

void write_trajectories_csv(std::ostream& os, std::span<const Trajectory> trajectories,
                            std::span<const std::string> block_labels) {
  os << "t_s,rho_nm,z_nm,v_rho_m_s,v_z_m_s,outcome\n";
  char buf[160];
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    if (i > 0) os << "\n";
    if (i < block_labels.size() && !block_labels[i].empty()) {
      os << "# " << block_labels[i] << "\n";
    }
    const char* outcome = to_string(trajectories[i].outcome.kind);
    for (const auto& s : trajectories[i].samples) {
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", s.t,
                    s.rho * 1e9, s.z * 1e9, s.v_rho, s.v_z, outcome);
      os << buf;
    }
  }
}

}  // namespace holeflux
