#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "cosserat/bundle.hpp"
#include "cosserat/errors.hpp"
#include "cosserat/invariant_metric.hpp"
#include "cosserat/solver/grid.hpp"
#include "cosserat/thermo.hpp"

namespace cosserat::solver {

using Field = std::vector<double>;
using Field3 = std::array<Field, 3>;

enum class ScenarioMode { RigidRotor, ReducedXOnly, FullBundle };
enum class EnergyMode { Isothermal, Evolved };
/// How Tr(sigma* DU) enters the energy equation.
enum class TraceTerm { Contraction, Paper };

struct Physics {
  metric::InertiaSpectrum<double> lambda{1.0, 2.0, 3.0};
  bundle::MediaConnectionForm omega;
  thermo::PressureLaw law;
  double zeta = 0.0;
};

struct ModelOptions {
  ScenarioMode mode = ScenarioMode::ReducedXOnly;
  EnergyMode energy = EnergyMode::Isothermal;
  metric::ChristoffelMode christoffel = metric::ChristoffelMode::Koszul;
  TraceTerm trace_term = TraceTerm::Contraction;
};

/// X lives on the x-grid, everything else on the bundle grid. `thermal` holds
/// T in isothermal runs and the energy density epsilon in evolved runs.
struct SimState {
  double t = 0.0;
  Field3 X;
  Field3 Y;
  Field rho;
  Field thermal;

  static SimState zeros(const BundleGrid& g) {
    SimState s;
    for (int i = 0; i < 3; ++i) {
      s.X[i].assign(g.x_count(), 0.0);
      s.Y[i].assign(g.size(), 0.0);
    }
    s.rho.assign(g.size(), 0.0);
    s.thermal.assign(g.size(), 0.0);
    return s;
  }
};

/// out = base + a * dir (time is not touched).
inline void axpy(SimState& out, const SimState& base, double a, const SimState& dir) {
  auto f = [a](Field& o, const Field& b, const Field& d) {
    o.resize(b.size());
    for (std::size_t n = 0; n < b.size(); ++n) o[n] = b[n] + a * d[n];
  };
  for (int i = 0; i < 3; ++i) {
    f(out.X[i], base.X[i], dir.X[i]);
    f(out.Y[i], base.Y[i], dir.Y[i]);
  }
  f(out.rho, base.rho, dir.rho);
  f(out.thermal, base.thermal, dir.thermal);
}

inline std::vector<std::string> validate_mode(const GridSpec& g, ScenarioMode mode) {
  std::vector<std::string> errors;
  const bool x_inactive = g.x[0].n == 1 && g.x[1].n == 1 && g.x[2].n == 1;
  switch (mode) {
    case ScenarioMode::RigidRotor:
      if (!x_inactive || g.has_fiber()) errors.push_back("mode rigid_rotor requires a single-node grid");
      break;
    case ScenarioMode::ReducedXOnly:
      if (g.has_fiber()) errors.push_back("mode reduced_x_only requires grid.ny1 = grid.ny2 = grid.ny3 = 1");
      break;
    case ScenarioMode::FullBundle:
      if (!g.has_fiber()) errors.push_back("mode full_bundle requires at least one grid.nyK > 1");
      break;
  }
  return errors;
}

/// Throws StateInvalid on NaN, nonpositive density, or nonpositive temperature.
inline void check_state(const BundleGrid& g, const SimState& s, EnergyMode energy) {
  auto sized = [](const Field& f, std::size_t n, const char* name) {
    if (f.size() != n) throw StateInvalid(std::string("field ") + name + " has the wrong size");
  };
  for (int i = 0; i < 3; ++i) {
    sized(s.X[i], g.x_count(), "X");
    sized(s.Y[i], g.size(), "Y");
  }
  sized(s.rho, g.size(), "rho");
  sized(s.thermal, g.size(), "thermal");
  auto finite = [&](const Field& f, const std::string& name) {
    for (std::size_t n = 0; n < f.size(); ++n)
      if (!std::isfinite(f[n])) throw StateInvalid("non-finite " + name + " at node " + std::to_string(n));
  };
  for (int i = 0; i < 3; ++i) {
    finite(s.X[i], "X" + std::to_string(i + 1));
    finite(s.Y[i], "Y" + std::to_string(i + 1));
  }
  finite(s.rho, "rho");
  finite(s.thermal, energy == EnergyMode::Isothermal ? "T" : "epsilon");
  for (std::size_t n = 0; n < s.rho.size(); ++n)
    if (!(s.rho[n] > 0.0)) throw StateInvalid("nonpositive density at node " + std::to_string(n));
  if (energy == EnergyMode::Isothermal) {
    for (std::size_t n = 0; n < s.thermal.size(); ++n)
      if (!(s.thermal[n] > 0.0)) throw StateInvalid("nonpositive temperature at node " + std::to_string(n));
  }
  if (!std::isfinite(s.t)) throw StateInvalid("non-finite time");
}

/// Worker count for RHS assembly; COSSERAT_THREADS overrides the hardware count.
inline unsigned worker_count() {
  if (const char* env = std::getenv("COSSERAT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return unsigned(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks; fn(begin, end) must only write to its own range.
template <class F>
void parallel_for(std::size_t n, F&& fn, std::size_t min_chunk = 4096) {
  const unsigned workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / min_chunk));
  if (workers <= 1) {
    fn(std::size_t(0), n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cosserat::solver
