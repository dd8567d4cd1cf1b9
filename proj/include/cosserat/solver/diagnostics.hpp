#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "cosserat/solver/integrator.hpp"

namespace cosserat::solver {

struct DiagnosticRecord {
  double t = 0.0;
  long step = 0;
  double total_mass = 0.0;
  double rotor_energy = 0.0;  ///< 1/2 sum lambda_i <Y_i^2>
  double casimir = 0.0;       ///< sum lambda_i^2 <Y_i^2>
  double rho_min = 0.0;
  double rho_max = 0.0;
  double div_max = 0.0;       ///< max |sum d_i X_i + E_i Y_i|
  double cfl = 0.0;
  double first_law_residual = 0.0;
  double mode_gap = 0.0;      ///< max momentum RHS difference between Christoffel modes
};

/// Rate-of-deformation tensor of the discrete field at bundle node n.
inline MixedTensor deformation_at(const EulerSystem& sys, const SimState& s, const Kinematics& k, std::size_t n) {
  const std::size_t ny = sys.grid().y_count(), ix = n / ny;
  bundle::FieldJet jet;
  for (int i = 0; i < 3; ++i) {
    jet.X[i] = s.X[i][ix];
    jet.Y[i] = s.Y[i][n];
    for (int j = 0; j < 3; ++j) {
      jet.dX(i, j) = k.dX[i][j][ix];
      jet.dY(i, j) = k.dY[i][j][n];
      jet.eY(i, j) = k.eY[i][j][n];
    }
  }
  const auto table = metric::christoffel(sys.physics().lambda, sys.options().christoffel);
  return bundle::deformation_tensor(jet, table);
}

/// First-law residual along a short smooth path through the state at node 0.
inline double first_law_sample(const EulerSystem& sys, const SimState& s, const Kinematics& k, const Field& T) {
  const double T0 = T[0], rho0 = s.rho[0];
  const MixedTensor d0 = deformation_at(sys, s, k, 0);
  thermo::ThermoPath path{[T0](double t) { return T0 * (1.0 + 0.2 * t); },
                          [rho0](double t) { return rho0 * (1.0 + 0.1 * std::sin(t)); },
                          [d0](double t) { return d0 + t * 0.1 * (d0 + MixedTensor::identity()); }};
  return thermo::first_law_residual(sys.physics().law, sys.physics().omega, path, 5);
}

inline double momentum_mode_gap(const EulerSystem& sys, const SimState& s) {
  const auto other = sys.with_christoffel(sys.options().christoffel == metric::ChristoffelMode::Koszul
                                              ? metric::ChristoffelMode::PaperLiteral
                                              : metric::ChristoffelMode::Koszul);
  const MomentumTendency a = sys.rhs_momentum(s), b = other.rhs_momentum(s);
  double gap = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (std::size_t n = 0; n < a.X[i].size(); ++n) gap = std::max(gap, std::abs(a.X[i][n] - b.X[i][n]));
    for (std::size_t n = 0; n < a.Y[i].size(); ++n) gap = std::max(gap, std::abs(a.Y[i][n] - b.Y[i][n]));
  }
  return gap;
}

inline DiagnosticRecord diagnostics(const EulerSystem& sys, const SimState& s, long step, double dt) {
  const BundleGrid& g = sys.grid();
  const auto& lam = sys.physics().lambda;
  DiagnosticRecord r;
  r.t = s.t;
  r.step = step;
  r.total_mass = sys.total_mass(s);
  const double count = double(g.size());
  for (int i = 0; i < 3; ++i) {
    double mean_sq = 0.0;
    for (double y : s.Y[i]) mean_sq += y * y;
    mean_sq /= count;
    r.rotor_energy += 0.5 * lam[i] * mean_sq;
    r.casimir += lam[i] * lam[i] * mean_sq;
  }
  r.rho_min = std::numeric_limits<double>::infinity();
  r.rho_max = -std::numeric_limits<double>::infinity();
  for (double v : s.rho) {
    r.rho_min = std::min(r.rho_min, v);
    r.rho_max = std::max(r.rho_max, v);
  }
  const Kinematics k = sys.kinematics(s);
  const std::size_t ny = g.y_count();
  for (std::size_t n = 0; n < g.size(); ++n) r.div_max = std::max(r.div_max, std::abs(k.div_x[n / ny] + k.div_e[n]));
  r.cfl = cfl_number(g, s, dt);
  const Field T = sys.temperature(s, k);
  r.first_law_residual = first_law_sample(sys, s, k, T);
  r.mode_gap = momentum_mode_gap(sys, s);
  return r;
}

}  // namespace cosserat::solver
