#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zeno/types.hpp"

namespace zeno::detail {

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
  double min_step = 0.0;
};

/// Adaptive step-halving driver shared by the density-operator and
/// population integrators. One trial compares a full step against two half
/// steps (Richardson estimate for a second-order one-step method); the
/// two-half-step result is kept on acceptance, so each accepted update is a
/// product of single-step maps and structure preserved by the stepper (CPTP,
/// column-stochasticity) survives exactly.
template <class State, class Stepper, class Norm>
State adaptive_integrate(State state, double t0, double t1, double tol,
                         long max_attempts, Stepper&& step, Norm&& diff,
                         IntegratorStats* stats,
                         std::vector<std::string>* warnings) {
  if (t1 < t0)
    throw ValidationError("adaptive_integrate: t1 must be >= t0");
  const double range = t1 - t0;
  if (range == 0.0) return state;
  const double hmin = range * 1e-12;
  double h = range;
  double t = t0;
  long attempts = 0;
  bool floor_warned = false;

  while (t1 - t > range * 1e-15) {
    h = std::min(h, t1 - t);
    if (++attempts > max_attempts) {
      std::ostringstream msg;
      msg << "integrator exceeded " << max_attempts << " step attempts at t = "
          << t << " (h = " << h << ", accepted = "
          << (stats ? stats->accepted : -1) << ")";
      throw ConvergenceError(msg.str());
    }
    State full = step(state, t, h);
    State mid = step(state, t, 0.5 * h);
    State half = step(mid, t + 0.5 * h, 0.5 * h);
    const double err = diff(full, half) / 3.0;
    // Proportional budget with a floor at the roundoff level of a single
    // step; without the floor, long ranges drive the budget below machine
    // noise and the controller can never accept.
    constexpr double noise_floor = 32.0 * 2.220446049250313e-16;
    const double budget = std::max(tol * (h / range), noise_floor);
    if (err <= budget || h <= hmin) {
      if (h <= hmin && err > budget && warnings && !floor_warned) {
        warnings->push_back(
            "integrator hit its minimum step size; local error estimate "
            "above budget");
        floor_warned = true;
      }
      state = std::move(half);
      t += h;
      if (stats) {
        ++stats->accepted;
        stats->min_step = stats->min_step == 0.0 ? h
                                                 : std::min(stats->min_step, h);
      }
      // Third-order local error: doubling h scales it by 8, so growth is
      // safe from an eighth of the budget. Noise-level estimates always
      // allow growth, or tiny steps would stay tiny forever.
      if (err <= noise_floor || err < 0.125 * budget) h *= 2.0;
    } else {
      h *= 0.5;
      if (stats) ++stats->rejected;
    }
  }
  return state;
}

}  // namespace zeno::detail
