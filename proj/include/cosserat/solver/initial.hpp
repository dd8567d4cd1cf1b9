#pragma once

#include <cmath>
#include <string>

#include "cosserat/solver/system.hpp"

namespace cosserat::solver {

enum class InitialKind { Uniform, SineX1, FiberBump };

struct InitialCondition {
  InitialKind kind = InitialKind::Uniform;
  Vec3 X = Vec3::Zero();
  Vec3 Y = Vec3::Zero();
  double rho = 1.0;
  double T = 1.0;
  double amplitude = 0.0;           ///< relative density perturbation
  double velocity_amplitude = 0.0;  ///< added to X1 as a sine in x1
  double width = 0.5;               ///< fiber bump width in chart coordinates
  int wavenumber = 1;
  bool operator==(const InitialCondition&) const = default;
};

/// uniform: constant fields.
/// sine_x1: rho (1 + amplitude sin(k x1)), X1 + velocity_amplitude sin(k x1), k = 2 pi wavenumber / L1.
/// fiber_bump: rho (1 + amplitude exp(-|y|^2 / (2 width^2)) (1 + 0.5 sin(k x1))), X1 as in sine_x1.
/// RigidRotor forces X = 0. In evolved runs the temperature is converted to epsilon.
inline SimState make_initial_state(const EulerSystem& sys, const InitialCondition& ic) {
  const BundleGrid& g = sys.grid();
  SimState s = SimState::zeros(g);
  const double k = 2.0 * so3::kPi * ic.wavenumber / g.spec().x[0].extent;
  const std::size_t ny = g.y_count();
  for (std::size_t ix = 0; ix < g.x_count(); ++ix) {
    const double phase = g.x_active(0) ? std::sin(k * g.x(ix)[0]) : 0.0;
    for (int i = 0; i < 3; ++i) s.X[i][ix] = ic.X[i];
    if (ic.kind != InitialKind::Uniform) s.X[0][ix] += ic.velocity_amplitude * phase;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const std::size_t n = ix * ny + iy;
      for (int i = 0; i < 3; ++i) s.Y[i][n] = ic.Y[i];
      double rho = ic.rho;
      if (ic.kind == InitialKind::SineX1) rho *= 1.0 + ic.amplitude * phase;
      if (ic.kind == InitialKind::FiberBump) {
        const double r2 = g.y(iy).squaredNorm();
        rho *= 1.0 + ic.amplitude * std::exp(-r2 / (2.0 * ic.width * ic.width)) * (1.0 + 0.5 * phase);
      }
      s.rho[n] = rho;
      s.thermal[n] = ic.T;
    }
  }
  if (sys.options().mode == ScenarioMode::RigidRotor)
    for (auto& x : s.X) std::fill(x.begin(), x.end(), 0.0);
  if (sys.options().energy == EnergyMode::Evolved) s.thermal = sys.energy_from_temperature(s, s.thermal);
  check_state(g, s, sys.options().energy);
  return s;
}

}  // namespace cosserat::solver
