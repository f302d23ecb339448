#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace holeflux::num {

struct OdeConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  // Event localization stops once |event value| falls below this (in the
  // event function's own units, lengths for the dynamics events).
  double event_tolerance = 1e-14;
  long max_steps = 5'000'000;
};

enum class OdeStatus { ReachedEnd, EventTerminated, StepSizeUnderflow, MaxStepsExceeded };

template <std::size_t N>
struct OdeEvent {
  std::function<double(double, const std::array<double, N>&)> value;
  bool terminal = true;
  int direction = 0;  // +1: crossing upward, -1: downward, 0: either
};

template <std::size_t N>
struct OdeSample {
  double t;
  std::array<double, N> y;
  std::array<double, N> dy;
};

template <std::size_t N>
struct OdeSolution {
  std::vector<OdeSample<N>> samples;
  OdeStatus status = OdeStatus::ReachedEnd;
  int terminal_event = -1;  // index into the events span, -1 if none fired
  double t_event = 0.0;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_b5[7] = {35.0 / 384,     0.0,        500.0 / 1113, 125.0 / 192,
                                    -2187.0 / 6784, 11.0 / 84,  0.0};
inline constexpr double dp_b4[7] = {5179.0 / 57600,    0.0,           7571.0 / 16695, 393.0 / 640,
                                    -92097.0 / 339200, 187.0 / 2100,  1.0 / 40};

template <std::size_t N>
std::array<double, N> hermite(double t, const OdeSample<N>& s0, const OdeSample<N>& s1) {
  const double h = s1.t - s0.t;
  const double u = (t - s0.t) / h;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
  const double h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u);
  const double h11 = u * u * (u - 1);
  std::array<double, N> y;
  for (std::size_t i = 0; i < N; ++i) {
    y[i] = h00 * s0.y[i] + h10 * h * s0.dy[i] + h01 * s1.y[i] + h11 * h * s1.dy[i];
  }
  return y;
}

inline bool crossed(double g0, double g1, int direction) {
  if (direction >= 0 && g0 < 0.0 && g1 >= 0.0) return true;
  if (direction <= 0 && g0 > 0.0 && g1 <= 0.0) return true;
  return false;
}

}  // namespace detail

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) with event detection.
// rhs(t, y, dydt); events are localized on a cubic Hermite interpolant of the
// bracketing step. Terminates at the first terminal event.
template <std::size_t N, class Rhs>
OdeSolution<N> solve_ode(Rhs&& rhs, std::array<double, N> y0, double t0, double t1,
                         const std::vector<OdeEvent<N>>& events, const OdeConfig& cfg = {}) {
  if (!(t1 > t0)) throw std::invalid_argument("solve_ode: t1 must exceed t0");
  OdeSolution<N> sol;

  std::array<double, N> y = y0;
  std::array<double, N> k[7];
  double t = t0;
  rhs(t, y, k[0]);
  sol.samples.push_back({t, y, k[0]});

  std::vector<double> g_prev(events.size());
  for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].value(t, y);

  double h = std::min({cfg.max_step, (t1 - t0) / 50.0});
  const double h_min = 1e-14 * (t1 - t0);

  for (long step = 0; step < cfg.max_steps; ++step) {
    if (t >= t1) {
      sol.status = OdeStatus::ReachedEnd;
      return sol;
    }
    h = std::min(h, t1 - t);

    // trial step
    std::array<double, N> y_stage, y5, y4;
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0.0;
        for (int j = 0; j < s; ++j) acc += detail::dp_a[s][j] * k[j][i];
        y_stage[i] = y[i] + h * acc;
      }
      rhs(t + detail::dp_c[s] * h, y_stage, k[s]);
    }
    double err_norm = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      double acc5 = 0.0, acc4 = 0.0;
      for (int s = 0; s < 7; ++s) {
        acc5 += detail::dp_b5[s] * k[s][i];
        acc4 += detail::dp_b4[s] * k[s][i];
      }
      y5[i] = y[i] + h * acc5;
      y4[i] = y[i] + h * acc4;
      if (!std::isfinite(y5[i]) || !std::isfinite(y4[i])) finite = false;
      const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double e = (y5[i] - y4[i]) / scale;
      err_norm += e * e;
    }
    err_norm = std::sqrt(err_norm / N);

    if (!finite || err_norm > 1.0) {
      // reject
      h *= finite ? std::max(0.2, 0.9 * std::pow(err_norm, -0.2)) : 0.5;
      if (h < h_min) {
        sol.status = OdeStatus::StepSizeUnderflow;
        return sol;
      }
      continue;
    }

    // accept; stage 7 sits at (t + h, y5), so it is the new derivative (FSAL)
    const double t_new = t + h;
    std::array<double, N> k_new = k[6];
    OdeSample<N> s0 = sol.samples.back();
    OdeSample<N> s1{t_new, y5, k_new};

    // event scan over the accepted step
    int fired = -1;
    double t_fire = t_new;
    std::array<double, N> y_fire = y5;
    for (std::size_t e = 0; e < events.size(); ++e) {
      const double g1 = events[e].value(t_new, y5);
      if (detail::crossed(g_prev[e], g1, events[e].direction)) {
        // localize on the Hermite interpolant
        double ta = t, tb = t_new, ga = g_prev[e];
        std::array<double, N> yb = y5;
        for (int it = 0; it < 200; ++it) {
          const double tm = 0.5 * (ta + tb);
          auto ym = detail::hermite(tm, s0, s1);
          const double gm = events[e].value(tm, ym);
          if ((gm <= 0.0) == (ga <= 0.0)) {
            ta = tm;
            ga = gm;
          } else {
            tb = tm;
            yb = ym;
          }
          if (std::abs(gm) <= cfg.event_tolerance || tb - ta <= 1e-15 * std::max(1.0, std::abs(t_new))) {
            break;
          }
        }
        if (tb < t_fire || fired < 0) {
          fired = static_cast<int>(e);
          t_fire = tb;
          y_fire = yb;
        }
      }
      g_prev[e] = g1;
    }

    if (fired >= 0 && events[fired].terminal) {
      std::array<double, N> dy_fire;
      rhs(t_fire, y_fire, dy_fire);
      sol.samples.push_back({t_fire, y_fire, dy_fire});
      sol.status = OdeStatus::EventTerminated;
      sol.terminal_event = fired;
      sol.t_event = t_fire;
      return sol;
    }

    t = t_new;
    y = y5;
    k[0] = k_new;
    sol.samples.push_back(s1);
    if (fired >= 0) {
      for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].value(t, y);
    }

    h = std::min(cfg.max_step, h * std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.2), 0.2, 5.0));
  }
  sol.status = OdeStatus::MaxStepsExceeded;
  return sol;
}

}  // namespace holeflux::num
