#pragma once

#include <chrono>
#include <cmath>
#include <string>

#include "cosserat/solver/diagnostics.hpp"

namespace cosserat::solver {

struct RunSettings {
  double dt = 1e-3;
  double t_end = 1.0;
  long every = 1;  ///< observer cadence in steps
};

struct RunOutcome {
  bool ok = true;
  long steps = 0;
  std::string error_kind;
  std::string error_message;
  double wall_seconds = 0.0;
  SimState state;
};

/// Number of steps to t_end; the last one is shortened when dt does not divide t_end.
inline long step_count(double dt, double t_end) {
  const double q = t_end / dt;
  const long full = long(std::floor(q + 1e-9));
  return (q - double(full) > 1e-9) ? full + 1 : full;
}

/// Integrates to t_end. observer(step, state) runs at step 0, every `every` steps and at the
/// final step. Errors abort the run and are returned in the outcome together with the last
/// valid state.
template <class Observer>
RunOutcome integrate(const EulerSystem& sys, SimState state, const RunSettings& settings, Observer&& observer) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  auto finish = [&] {
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.state = std::move(state);
    return out;
  };
  try {
    if (!(settings.dt > 0.0)) throw DomainError("time.dt must be positive");
    if (!(settings.t_end >= 0.0)) throw DomainError("time.t_end must be nonnegative");
    check_state(sys.grid(), state, sys.options().energy);
    ChartGuard guard(sys.grid());
    const long total = step_count(settings.dt, settings.t_end);
    const double t0 = state.t;
    observer(0L, static_cast<const SimState&>(state));
    for (long n = 1; n <= total; ++n) {
      const double target = n == total ? t0 + settings.t_end : t0 + double(n) * settings.dt;
      const double h = target - state.t;
      guard.advance(sys.grid(), state, h);
      SimState next = step_rk4(sys, state, h);
      next.t = target;
      state = std::move(next);
      out.steps = n;
      if (n % settings.every == 0 || n == total) observer(n, static_cast<const SimState&>(state));
    }
  } catch (const Error& e) {
    out.ok = false;
    out.error_kind = e.kind();
    out.error_message = e.what();
  }
  return finish();
}

inline RunOutcome integrate(const EulerSystem& sys, SimState state, const RunSettings& settings) {
  return integrate(sys, std::move(state), settings, [](long, const SimState&) {});
}

}  // namespace cosserat::solver
