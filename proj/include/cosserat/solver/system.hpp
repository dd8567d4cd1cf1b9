#pragma once

// Right-hand sides of the discretized momentum, mass and energy equations.

#include <array>
#include <cmath>
#include <utility>

#include "cosserat/solver/grid.hpp"
#include "cosserat/solver/state.hpp"

namespace cosserat::solver {

/// First derivatives of the velocity field on the grid.
struct Kinematics {
  std::array<Field3, 3> dX;  ///< [i][j] = d_j X_i on the x-grid
  std::array<Field3, 3> dY;  ///< [i][j] = d_j Y_i
  std::array<Field3, 3> eY;  ///< [i][j] = E_j Y_i
  Field div_x;               ///< sum d_i X_i on the x-grid
  Field div_e;               ///< sum E_i Y_i
};

struct MomentumTendency {
  Field3 X;
  Field3 Y;
};

class EulerSystem {
 public:
  EulerSystem(BundleGrid grid, Physics physics, ModelOptions options)
      : grid_(std::move(grid)), phys_(std::move(physics)), opt_(options) {
    if (auto errors = validate_mode(grid_.spec(), opt_.mode); !errors.empty()) throw ValidationError(errors);
    if (!(phys_.zeta >= 0.0) || !std::isfinite(phys_.zeta)) throw ValidationError({"thermal.zeta must be >= 0"});
    if (opt_.christoffel == metric::ChristoffelMode::PaperLiteral) {
      gyro_ = metric::printed_gyroscopic_coefficients(phys_.lambda);
    } else {
      gyro_ = metric::gyroscopic_coefficients(metric::christoffel(phys_.lambda, metric::ChristoffelMode::Koszul));
    }
  }

  const BundleGrid& grid() const { return grid_; }
  const Physics& physics() const { return phys_; }
  const ModelOptions& options() const { return opt_; }
  const metric::GyroscopicCoefficients& gyroscopic() const { return gyro_; }

  EulerSystem with_christoffel(metric::ChristoffelMode mode) const {
    ModelOptions o = opt_;
    o.christoffel = mode;
    return EulerSystem(grid_, phys_, o);
  }

  Kinematics kinematics(const SimState& s) const {
    Kinematics k;
    k.div_x.assign(grid_.x_count(), 0.0);
    k.div_e.assign(grid_.size(), 0.0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        dx_base(grid_, s.X[i], j, k.dX[i][j]);
        dx_bundle(grid_, s.Y[i], j, k.dY[i][j]);
      }
      k.eY[i] = frame_derivatives(grid_, s.Y[i]);
      for (std::size_t ix = 0; ix < grid_.x_count(); ++ix) k.div_x[ix] += k.dX[i][i][ix];
      for (std::size_t n = 0; n < grid_.size(); ++n) k.div_e[n] += k.eY[i][i][n];
    }
    return k;
  }

  /// Temperature field: held in the state (isothermal) or recovered from epsilon.
  Field temperature(const SimState& s, const Kinematics& k) const {
    if (opt_.energy == EnergyMode::Isothermal) return s.thermal;
    Field T(grid_.size());
    const std::size_t ny = grid_.y_count();
    for (std::size_t n = 0; n < grid_.size(); ++n) {
      const double trv = k.div_e[n];
      const double tr = k.div_x[n / ny] + trv;
      T[n] = thermo::recover_temperature(phys_.law, s.rho[n], tr, trv, s.thermal[n]);
    }
    return T;
  }
  Field temperature(const SimState& s) const { return temperature(s, kinematics(s)); }

  /// epsilon(T, rho, Delta) at every node; used to start an evolved run from a temperature field.
  Field energy_from_temperature(const SimState& s, const Field& T) const {
    const Kinematics k = kinematics(s);
    const std::size_t ny = grid_.y_count();
    Field eps(grid_.size());
    for (std::size_t n = 0; n < grid_.size(); ++n) {
      eps[n] = thermo::energy_density_from_traces(phys_.law, T[n], s.rho[n], k.div_x[n / ny] + k.div_e[n],
                                                  k.div_e[n]);
    }
    return eps;
  }

  std::pair<Field, Field> pressures(const SimState& s, const Field& T) const {
    Field p1(grid_.size()), p2(grid_.size());
    for (std::size_t n = 0; n < grid_.size(); ++n) {
      const double rho = s.rho[n];
      if (!(rho > 0.0) || !std::isfinite(rho)) throw StateInvalid("nonpositive density at node " + std::to_string(n));
      if (!(T[n] > 0.0) || !std::isfinite(T[n]))
        throw StateInvalid("nonpositive temperature at node " + std::to_string(n));
      const thermo::PressureValues p = phys_.law.evaluate(T[n], rho);
      p1[n] = p.p1;
      p2[n] = p.p2;
    }
    return {std::move(p1), std::move(p2)};
  }

  /// lambda_i^-1 E_i(p1 + p2), the vertical components of the raised stress divergence.
  Field3 vertical_pressure_force(const Field& p1, const Field& p2) const {
    Field ptot(p1.size());
    for (std::size_t n = 0; n < ptot.size(); ++n) ptot[n] = p1[n] + p2[n];
    Field3 e = frame_derivatives(grid_, ptot);
    for (int i = 0; i < 3; ++i)
      for (double& v : e[i]) v /= phys_.lambda[i];
    return e;
  }
  Field3 vertical_pressure_force(const SimState& s) const {
    const auto [p1, p2] = pressures(s, temperature(s));
    return vertical_pressure_force(p1, p2);
  }

  MomentumTendency rhs_momentum(const SimState& s) const {
    const Kinematics k = kinematics(s);
    return rhs_momentum(s, k, temperature(s, k));
  }

  MomentumTendency rhs_momentum(const SimState& s, const Kinematics& k, const Field& T) const {
    const auto [p1, p2] = pressures(s, T);
    Field3 dp2;
    for (int a = 0; a < 3; ++a) dx_bundle(grid_, p2, a, dp2[a]);
    const Field3 ep2 = frame_derivatives(grid_, p2);
    const Field3 vforce = vertical_pressure_force(p1, p2);

    const std::size_t nx = grid_.x_count(), ny = grid_.y_count();
    const Mat3& w = phys_.omega.matrix();
    const auto& c = gyro_.c;
    MomentumTendency out;
    for (int i = 0; i < 3; ++i) {
      out.X[i].assign(nx, 0.0);
      out.Y[i].assign(grid_.size(), 0.0);
    }

    parallel_for(nx, [&](std::size_t xb, std::size_t xe) {
      for (std::size_t ix = xb; ix < xe; ++ix) {
        std::array<double, 3> force{0.0, 0.0, 0.0};
        for (std::size_t iy = 0; iy < ny; ++iy) {
          const std::size_t n = ix * ny + iy;
          const double inv_rho = 1.0 / s.rho[n];
          const double Y[3] = {s.Y[0][n], s.Y[1][n], s.Y[2][n]};
          for (int i = 0; i < 3; ++i) {
            // (d_i - sum_j omega_ji E_j)(p2) / rho
            double f = dp2[i][n];
            for (int j = 0; j < 3; ++j) f -= w(j, i) * ep2[j][n];
            force[i] += f * inv_rho;

            const int j = (i + 1) % 3, l = (i + 2) % 3;
            double adv = 0.0;
            for (int m = 0; m < 3; ++m) adv += s.X[m][ix] * k.dY[i][m][n] + Y[m] * k.eY[i][m][n];
            out.Y[i][n] = -adv - c[i] * Y[j] * Y[l] * inv_rho + vforce[i][n] * inv_rho;
          }
        }
        if (opt_.mode == ScenarioMode::RigidRotor) continue;
        for (int i = 0; i < 3; ++i) {
          double adv = 0.0;
          for (int m = 0; m < 3; ++m) adv += s.X[m][ix] * k.dX[i][m][ix];
          out.X[i][ix] = -adv + force[i] / double(ny);
        }
      }
    }, std::max<std::size_t>(1, 4096 / ny));
    return out;
  }

  /// Flux form: -(sum d_i(rho X_i) + sum E_i(rho Y_i)).
  Field rhs_mass(const SimState& s) const {
    const std::size_t ny = grid_.y_count();
    Field out(grid_.size(), 0.0), flux(grid_.size()), d;
    for (int i = 0; i < 3; ++i) {
      if (grid_.x_active(i)) {
        for (std::size_t n = 0; n < flux.size(); ++n) flux[n] = s.rho[n] * s.X[i][n / ny];
        dx_bundle(grid_, flux, i, d);
        for (std::size_t n = 0; n < out.size(); ++n) out[n] -= d[n];
      }
      if (grid_.spec().has_fiber()) {
        for (std::size_t n = 0; n < flux.size(); ++n) flux[n] = s.rho[n] * s.Y[i][n];
        const Field3 e = frame_derivatives(grid_, flux);
        for (std::size_t n = 0; n < out.size(); ++n) out[n] -= e[i][n];
      }
    }
    return out;
  }

  /// Advective form -(sum X_i d_i rho + Y_i E_i rho + (d_i X_i + E_i Y_i) rho); equal to rhs_mass up to stencil error.
  Field rhs_mass_advective(const SimState& s) const {
    const Kinematics k = kinematics(s);
    const std::size_t ny = grid_.y_count();
    Field3 drho;
    for (int a = 0; a < 3; ++a) dx_bundle(grid_, s.rho, a, drho[a]);
    const Field3 erho = frame_derivatives(grid_, s.rho);
    Field out(grid_.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
      double v = (k.div_x[n / ny] + k.div_e[n]) * s.rho[n];
      for (int i = 0; i < 3; ++i) v += s.X[i][n / ny] * drho[i][n] + s.Y[i][n] * erho[i][n];
      out[n] = -v;
    }
    return out;
  }

  /// d epsilon/dt = -(div U) epsilon - trace term + zeta (sum d_i d_i T + sum lambda_i^-1 E_i E_i T).
  Field rhs_energy(const SimState& s) const {
    const Kinematics k = kinematics(s);
    return rhs_energy(s, k, temperature(s, k));
  }

  Field rhs_energy(const SimState& s, const Field& T) const { return rhs_energy(s, kinematics(s), T); }

  Field rhs_energy(const SimState& s, const Kinematics& k, const Field& T) const {
    const std::size_t ny = grid_.y_count();
    const auto [p1, p2] = pressures(s, T);
    Field lap(grid_.size(), 0.0), d;
    if (phys_.zeta != 0.0) {
      for (int a = 0; a < 3; ++a) {
        if (!grid_.x_active(a)) continue;
        dxx_bundle(grid_, T, a, d);
        for (std::size_t n = 0; n < lap.size(); ++n) lap[n] += d[n];
      }
      if (grid_.spec().has_fiber()) {
        const Field3 eT = frame_derivatives(grid_, T);
        for (int i = 0; i < 3; ++i) {
          const Field3 eeT = frame_derivatives(grid_, eT[i]);
          for (std::size_t n = 0; n < lap.size(); ++n) lap[n] += eeT[i][n] / phys_.lambda[i];
        }
      }
    }
    Field out(grid_.size());
    for (std::size_t n = 0; n < out.size(); ++n) {
      const double divx = k.div_x[n / ny], dive = k.div_e[n];
      const double trace_term =
          opt_.trace_term == TraceTerm::Contraction ? (p1[n] + p2[n]) * dive + p1[n] * divx : dive;
      const double eps = opt_.energy == EnergyMode::Evolved ? s.thermal[n] : 0.0;
      out[n] = -(divx + dive) * eps - trace_term + phys_.zeta * lap[n];
    }
    return out;
  }

  /// Full tendency of the state.
  SimState rhs(const SimState& s) const {
    const Kinematics k = kinematics(s);
    const Field T = temperature(s, k);
    MomentumTendency m = rhs_momentum(s, k, T);
    SimState out;
    out.X = std::move(m.X);
    out.Y = std::move(m.Y);
    out.rho = rhs_mass(s);
    if (opt_.energy == EnergyMode::Evolved) {
      out.thermal = rhs_energy(s, k, T);
    } else {
      out.thermal.assign(grid_.size(), 0.0);
    }
    return out;
  }

  double total_mass(const SimState& s) const {
    double sum = 0.0;
    for (double r : s.rho) sum += r;
    return sum * grid_.cell_volume() / double(grid_.y_count());
  }

 private:
  BundleGrid grid_;
  Physics phys_;
  ModelOptions opt_;
  metric::GyroscopicCoefficients gyro_;
};

}  // namespace cosserat::solver
