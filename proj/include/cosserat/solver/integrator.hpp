#pragma once

#include <algorithm>
#include <cmath>

#include "cosserat/solver/system.hpp"

namespace cosserat::solver {

/// Classical four-stage Runge-Kutta step. Failures inside a stage (nonpositive density,
/// pressure-law domain) and invariant violations of the result raise StateInvalid.
inline SimState step_rk4(const EulerSystem& sys, const SimState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive");
  SimState k1, k2, k3, k4, tmp, out;
  try {
    k1 = sys.rhs(s);
    axpy(tmp, s, 0.5 * dt, k1);
    k2 = sys.rhs(tmp);
    axpy(tmp, s, 0.5 * dt, k2);
    k3 = sys.rhs(tmp);
    axpy(tmp, s, dt, k3);
    k4 = sys.rhs(tmp);
  } catch (const DomainError& e) {
    throw StateInvalid(std::string("stage evaluation failed: ") + e.what());
  }
  out = s;
  auto combine = [dt](Field& o, const Field& a, const Field& b, const Field& c, const Field& d) {
    for (std::size_t n = 0; n < o.size(); ++n) o[n] += dt / 6.0 * (a[n] + 2.0 * b[n] + 2.0 * c[n] + d[n]);
  };
  for (int i = 0; i < 3; ++i) {
    combine(out.X[i], k1.X[i], k2.X[i], k3.X[i], k4.X[i]);
    combine(out.Y[i], k1.Y[i], k2.Y[i], k3.Y[i], k4.Y[i]);
  }
  combine(out.rho, k1.rho, k2.rho, k3.rho, k4.rho);
  combine(out.thermal, k1.thermal, k2.thermal, k3.thermal, k4.thermal);
  out.t = s.t + dt;
  check_state(sys.grid(), out, sys.options().energy);
  return out;
}

/// Largest speed M(y)Y pointing into the fiber box, over nodes on its faces.
inline double fiber_inflow_speed(const BundleGrid& g, const SimState& s) {
  if (!g.spec().has_fiber()) return 0.0;
  const std::size_t ny = g.y_count();
  double worst = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const std::size_t iy = n % ny;
    const auto m = g.y_multi(iy);
    bool face = false;
    for (int k = 0; k < 3; ++k) face = face || (g.y_active(k) && (m[k] == 0 || m[k] == g.ny(k) - 1));
    if (!face) continue;
    const Vec3 v = g.frame(iy) * Vec3(s.Y[0][n], s.Y[1][n], s.Y[2][n]);
    for (int k = 0; k < 3; ++k) {
      if (!g.y_active(k)) continue;
      if (m[k] == 0) worst = std::max(worst, v[k]);
      if (m[k] == g.ny(k) - 1) worst = std::max(worst, -v[k]);
    }
  }
  return worst;
}

/// Tracks how far the fiber flow could have carried data in from outside the chart box.
class ChartGuard {
 public:
  explicit ChartGuard(const BundleGrid& g) {
    spacing_ = 0.0;
    for (int k = 0; k < 3; ++k)
      if (g.y_active(k)) spacing_ = spacing_ == 0.0 ? g.dy(k) : std::min(spacing_, g.dy(k));
  }

  void advance(const BundleGrid& g, const SimState& s, double dt) {
    if (spacing_ == 0.0) return;
    travelled_ += dt * fiber_inflow_speed(g, s);
    if (travelled_ > spacing_) {
      throw ChartBoundary("fiber dynamics reached the chart boundary (inflow distance " +
                          std::to_string(travelled_) + " exceeds one fiber spacing " + std::to_string(spacing_) +
                          ")");
    }
  }
  double travelled() const { return travelled_; }

 private:
  double spacing_ = 0.0;
  double travelled_ = 0.0;
};

/// dt * max over the grid of |X_a|/dx_a and |(M Y)_k|/dy_k.
inline double cfl_number(const BundleGrid& g, const SimState& s, double dt) {
  double worst = 0.0;
  for (std::size_t ix = 0; ix < g.x_count(); ++ix)
    for (int a = 0; a < 3; ++a)
      if (g.x_active(a)) worst = std::max(worst, std::abs(s.X[a][ix]) / g.dx(a));
  if (g.spec().has_fiber()) {
    const std::size_t ny = g.y_count();
    for (std::size_t n = 0; n < g.size(); ++n) {
      const Vec3 v = g.frame(n % ny) * Vec3(s.Y[0][n], s.Y[1][n], s.Y[2][n]);
      for (int k = 0; k < 3; ++k)
        if (g.y_active(k)) worst = std::max(worst, std::abs(v[k]) / g.dy(k));
    }
  }
  return worst * dt;
}

}  // namespace cosserat::solver
