#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cosserat/solver/initial.hpp"
#include "cosserat/solver/run.hpp"
#include "cosserat/verify/checks.hpp"
#include "cosserat/verify/kernel_checks.hpp"
#include "cosserat/verify/oracles.hpp"
#include "cosserat/verify/thermo_checks.hpp"

namespace cosserat::verify {

namespace detail {

inline solver::EulerSystem rotor_system(const metric::InertiaSpectrum<double>& lam,
                                        metric::ChristoffelMode mode = metric::ChristoffelMode::Koszul) {
  solver::ModelOptions opt;
  opt.mode = solver::ScenarioMode::RigidRotor;
  opt.christoffel = mode;
  return solver::EulerSystem(solver::BundleGrid(solver::GridSpec{}), solver::Physics{lam, {}, {}, 0.0}, opt);
}

inline double rotor_energy(const metric::InertiaSpectrum<double>& lam, const solver::SimState& s) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i) e += 0.5 * lam[i] * s.Y[i][0] * s.Y[i][0];
  return e;
}

inline double rotor_casimir(const metric::InertiaSpectrum<double>& lam, const solver::SimState& s) {
  double e = 0.0;
  for (int i = 0; i < 3; ++i) e += lam[i] * lam[i] * s.Y[i][0] * s.Y[i][0];
  return e;
}

inline Vec3 rotor_final(const solver::EulerSystem& sys, const solver::SimState& s0, double dt, double t_end) {
  const solver::RunOutcome o = solver::integrate(sys, s0, {dt, t_end, 1000000});
  if (!o.ok) return Vec3::Constant(NAN);
  return Vec3(o.state.Y[0][0], o.state.Y[1][0], o.state.Y[2][0]);
}

/// u_t + u u_x = 0 by characteristics: x = xi + u0(xi) t.
struct CharacteristicSolution {
  double u_amp, rho_amp, k;
  double foot(double x, double t) const {
    double xi = x;
    for (int it = 0; it < 100; ++it) {
      const double f = xi + u_amp * std::sin(k * xi) * t - x;
      const double df = 1.0 + u_amp * k * std::cos(k * xi) * t;
      const double step = f / df;
      xi -= step;
      if (std::abs(step) < 1e-15) break;
    }
    return xi;
  }
  double u(double x, double t) const { return u_amp * std::sin(k * foot(x, t)); }
  double rho(double x, double t) const {
    const double xi = foot(x, t);
    return (1.0 + rho_amp * std::sin(k * xi)) / (1.0 + u_amp * k * std::cos(k * xi) * t);
  }
};

/// Independent second-order y-derivative at bundle node n of a bundle field.
inline double fiber_derivative(const solver::BundleGrid& g, const solver::Field& f, std::size_t n, int k) {
  const int ny = g.ny(k);
  if (ny < 2) return 0.0;
  const std::size_t ix = n / g.y_count(), iy = n % g.y_count();
  const std::size_t base = ix * g.y_count();
  auto m = g.y_multi(iy);
  const int i = m[k];
  auto at = [&](int j) {
    auto mm = m;
    mm[k] = j;
    return f[base + g.y_index(mm)];
  };
  const double h = g.dy(k);
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (i == ny - 1) return (3.0 * at(ny - 1) - 4.0 * at(ny - 2) + at(ny - 3)) / (2.0 * h);
  return (at(i + 1) - at(i - 1)) / (2.0 * h);
}

}  // namespace detail

/// Rigid rotor: conservation of energy and Casimir, RK4 self-convergence.
inline CriterionReport criterion_rigid_rotor() {
  Stopwatch clock;
  CriterionReport r{5, "Rigid-rotor reduction", {}, 0.0};
  const std::string suite = "solver";
  const metric::InertiaSpectrum<double> lam(1.0, 2.0, 3.0);
  const auto sys = detail::rotor_system(lam);
  solver::InitialCondition ic;
  ic.Y = Vec3(0.1, 1.0, 0.1);
  const solver::SimState s0 = solver::make_initial_state(sys, ic);
  const double e0 = detail::rotor_energy(lam, s0), c0 = detail::rotor_casimir(lam, s0);

  double e_drift = 0.0, c_drift = 0.0;
  Stopwatch run_clock;
  const solver::RunOutcome o = solver::integrate(sys, s0, {1e-3, 10.0, 1}, [&](long, const solver::SimState& s) {
    e_drift = std::max(e_drift, std::abs(detail::rotor_energy(lam, s) - e0) / e0);
    c_drift = std::max(c_drift, std::abs(detail::rotor_casimir(lam, s) - c0) / c0);
  });
  const double run_seconds = run_clock.seconds();
  r.checks.push_back(exactly(suite, "rotor run completes 10^4 steps", o.ok && o.steps == 10000, double(o.steps)));
  r.checks.push_back(at_most(suite, "energy relative drift, dt 1e-3, t 10", e_drift, 1e-8));
  r.checks.push_back(at_most(suite, "Casimir relative drift, dt 1e-3, t 10", c_drift, 1e-8));
  r.checks.push_back(at_most(suite, "rotor run wall seconds", run_seconds, 5.0));

  const Vec3 a = detail::rotor_final(sys, s0, 0.02, 10.0);
  const Vec3 b = detail::rotor_final(sys, s0, 0.01, 10.0);
  const Vec3 c = detail::rotor_final(sys, s0, 0.005, 10.0);
  const double order = std::log2((a - b).norm() / (b - c).norm());
  r.checks.push_back(at_least(suite, "self-convergence order in dt (0.02, 0.01, 0.005)", order, 3.9));

  const auto paper = detail::rotor_system(lam, metric::ChristoffelMode::PaperLiteral);
  const Vec3 fk = detail::rotor_final(sys, s0, 1e-3, 1.0), fp = detail::rotor_final(paper, s0, 1e-3, 1.0);
  r.checks.push_back(info(suite, "paper vs koszul rotor trajectory gap at t 1", (fk - fp).cwiseAbs().maxCoeff()));
  r.seconds = clock.seconds();
  return r;
}

/// Pressureless 1D flow against the characteristic solution.
inline CriterionReport criterion_classical_fluid() {
  Stopwatch clock;
  CriterionReport r{6, "Classical-fluid reduction", {}, 0.0};
  const std::string suite = "solver";
  const double u_amp = 0.25, rho_amp = 0.3, t_end = 0.3;
  const detail::CharacteristicSolution exact{u_amp, rho_amp, 2.0 * so3::kPi};
  std::vector<double> eu, erho;
  bool all_ok = true;
  for (int nx : {64, 128, 256}) {
    solver::GridSpec spec;
    spec.x[0] = {nx, 1.0, true};
    solver::ModelOptions opt;
    opt.mode = solver::ScenarioMode::ReducedXOnly;
    const solver::EulerSystem sys(solver::BundleGrid(spec), solver::Physics{}, opt);
    solver::InitialCondition ic;
    ic.kind = solver::InitialKind::SineX1;
    ic.amplitude = rho_amp;
    ic.velocity_amplitude = u_amp;
    const solver::SimState s0 = solver::make_initial_state(sys, ic);
    const double dx = sys.grid().dx(0);
    const solver::RunOutcome o = solver::integrate(sys, s0, {0.5 * dx, t_end, 1000000});
    all_ok = all_ok && o.ok;
    double emax_u = 0.0, emax_rho = 0.0;
    for (std::size_t ix = 0; ix < sys.grid().x_count(); ++ix) {
      const double x = sys.grid().x(ix)[0];
      emax_u = std::max(emax_u, std::abs(o.state.X[0][ix] - exact.u(x, t_end)));
      emax_rho = std::max(emax_rho, std::abs(o.state.rho[ix] - exact.rho(x, t_end)));
    }
    eu.push_back(emax_u);
    erho.push_back(emax_rho);
    r.checks.push_back(info(suite, "velocity Linf error nx " + std::to_string(nx), emax_u));
    r.checks.push_back(info(suite, "density Linf error nx " + std::to_string(nx), emax_rho));
  }
  r.checks.push_back(exactly(suite, "all refinement runs complete", all_ok));
  r.checks.push_back(at_least(suite, "velocity observed order (64, 128, 256)", min_order(eu), 1.9));
  r.checks.push_back(at_least(suite, "density observed order (64, 128, 256)", min_order(erho), 1.9));
  r.seconds = clock.seconds();
  r.checks.push_back(at_most(suite, "wall seconds", r.seconds, 30.0));
  return r;
}

/// Periodic ReducedXOnly run with pressure: total mass over 10^3 steps.
inline CriterionReport criterion_mass_conservation() {
  Stopwatch clock;
  CriterionReport r{7, "Discrete mass conservation", {}, 0.0};
  const std::string suite = "solver";
  solver::GridSpec spec;
  spec.x[0] = {32, 1.0, true};
  spec.x[1] = {16, 0.5, true};
  solver::Physics phys;
  phys.law.p1 = {0.2, 0.1, 0.0};
  phys.law.p2 = {-0.2, -0.1, 0.0};
  phys.omega = bundle::MediaConnectionForm(Mat3::Identity() * 0.2);
  solver::ModelOptions opt;
  opt.mode = solver::ScenarioMode::ReducedXOnly;
  const solver::EulerSystem sys(solver::BundleGrid(spec), phys, opt);
  solver::InitialCondition ic;
  ic.kind = solver::InitialKind::SineX1;
  ic.X = Vec3(0.2, -0.1, 0.0);
  ic.Y = Vec3(0.1, 0.2, 0.3);
  ic.amplitude = 0.2;
  ic.velocity_amplitude = 0.1;
  solver::SimState s0 = solver::make_initial_state(sys, ic);
  for (std::size_t ix = 0; ix < sys.grid().x_count(); ++ix) s0.X[1][ix] += 0.05 * std::cos(4.0 * so3::kPi * sys.grid().x(ix)[1]);
  const double m0 = sys.total_mass(s0);
  double worst = 0.0;
  const solver::RunOutcome o = solver::integrate(sys, s0, {2e-3, 2.0, 1}, [&](long, const solver::SimState& s) {
    worst = std::max(worst, std::abs(sys.total_mass(s) - m0) / m0);
  });
  r.checks.push_back(exactly(suite, "run completes 10^3 steps", o.ok && o.steps == 1000, double(o.steps)));
  r.checks.push_back(at_most(suite, "relative total-mass change, 10^3 steps", worst, 1e-11));
  const solver::Field a = sys.rhs_mass(s0), b = sys.rhs_mass_advective(s0);
  double gap = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) gap = std::max(gap, std::abs(a[n] - b[n]));
  r.checks.push_back(info(suite, "flux vs advective mass tendency gap (discretization)", gap));
  r.seconds = clock.seconds();
  return r;
}

/// Momentum RHS under both Christoffel modes on random states.
inline CriterionReport criterion_mode_independence(std::uint64_t seed = 8) {
  Stopwatch clock;
  CriterionReport r{8, "Christoffel mode independence", {}, 0.0};
  const std::string suite = "solver";
  oracle::Sampler rng(seed);
  double worst = 0.0;
  int cases = 0;
  for (int c = 0; c < 20; ++c) {
    solver::GridSpec spec;
    solver::ModelOptions opt;
    switch (c % 3) {
      case 0:
        opt.mode = solver::ScenarioMode::FullBundle;
        spec.x[0] = {4, 1.0, true};
        spec.ny = {4, 4, 4};
        spec.chart_radius = rng.uniform(0.5, 1.5);
        break;
      case 1:
        opt.mode = solver::ScenarioMode::ReducedXOnly;
        spec.x[0] = {8, 1.0, true};
        spec.x[1] = {4, 1.0, true};
        break;
      default:
        opt.mode = solver::ScenarioMode::RigidRotor;
        break;
    }
    if (c % 2 && opt.mode != solver::ScenarioMode::RigidRotor) opt.energy = solver::EnergyMode::Evolved;
    solver::Physics phys;
    phys.lambda = random_lambda(rng);
    phys.omega = bundle::MediaConnectionForm(rng.mat(-1.0, 1.0));
    phys.law = random_law(rng);
    phys.law.p1.c = std::abs(phys.law.p1.c);
    phys.law.p2.c = std::abs(phys.law.p2.c);
    const solver::EulerSystem koszul(solver::BundleGrid(spec), phys, opt);
    const auto paper = koszul.with_christoffel(metric::ChristoffelMode::PaperLiteral);
    const auto& g = koszul.grid();
    solver::SimState s = solver::SimState::zeros(g);
    for (int i = 0; i < 3; ++i) {
      if (opt.mode != solver::ScenarioMode::RigidRotor)
        for (double& v : s.X[i]) v = rng.uniform(-1.0, 1.0);
      for (double& v : s.Y[i]) v = rng.uniform(-1.0, 1.0);
    }
    for (double& v : s.rho) v = rng.uniform(0.5, 1.5);
    for (double& v : s.thermal) v = rng.uniform(0.5, 2.0);
    if (opt.energy == solver::EnergyMode::Evolved) s.thermal = koszul.energy_from_temperature(s, s.thermal);
    const auto a = koszul.rhs_momentum(s), b = paper.rhs_momentum(s);
    for (int i = 0; i < 3; ++i) {
      for (std::size_t n = 0; n < a.X[i].size(); ++n) worst = std::max(worst, std::abs(a.X[i][n] - b.X[i][n]));
      for (std::size_t n = 0; n < a.Y[i].size(); ++n) worst = std::max(worst, std::abs(a.Y[i][n] - b.Y[i][n]));
    }
    ++cases;
  }
  r.checks.push_back(exactly(suite, "random states evaluated", cases == 20, double(cases)));
  r.checks.push_back(at_most(suite, "max momentum RHS gap paper vs koszul, 20 states", worst, 1e-13));
  r.seconds = clock.seconds();
  return r;
}

/// 8^3 x 7^3 bundle run: invariants and the vertical pressure force against the dense frame oracle.
inline CriterionReport criterion_full_bundle_smoke(std::uint64_t seed = 9) {
  Stopwatch clock;
  CriterionReport r{9, "FullBundle smoke", {}, 0.0};
  const std::string suite = "solver";
  solver::GridSpec spec;
  for (int a = 0; a < 3; ++a) spec.x[a] = {8, 1.0, true};
  spec.ny = {7, 7, 7};
  spec.chart_radius = 1.0;
  solver::Physics phys;
  phys.lambda = metric::InertiaSpectrum<double>(1.0, 1.5, 2.0);
  phys.law.p1 = {0.6, 0.4, 0.0};
  phys.law.p2 = {0.3, 0.2, 0.0};
  Mat3 w = Mat3::Zero();
  w(0, 1) = 0.1;
  w(2, 0) = -0.05;
  phys.omega = bundle::MediaConnectionForm(w);
  solver::ModelOptions opt;
  opt.mode = solver::ScenarioMode::FullBundle;
  const solver::EulerSystem sys(solver::BundleGrid(spec), phys, opt);
  const auto& g = sys.grid();
  solver::InitialCondition ic;
  ic.kind = solver::InitialKind::FiberBump;
  ic.X = Vec3(0.1, 0.0, -0.05);
  ic.Y = Vec3(0.05, -0.03, 0.02);
  ic.amplitude = 0.2;
  ic.velocity_amplitude = 0.05;
  ic.width = 0.5;
  const solver::SimState s0 = solver::make_initial_state(sys, ic);

  // Initial state: analytic pressure gradient through the pushforward frame.
  const double K = phys.law.p1.partial_rho(1.0) + phys.law.p2.partial_rho(1.0);
  double sup = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double u = -10.0 + 1e-3 * i;
    sup = std::max(sup, std::abs(u * u * u - 3.0 * u) * std::exp(-0.5 * u * u));
  }
  const double third = K * ic.rho * ic.amplitude * 1.5 * sup / std::pow(ic.width, 3);
  const double k1 = 2.0 * so3::kPi / spec.x[0].extent;
  const solver::Field3 force0 = sys.vertical_pressure_force(s0);
  oracle::Sampler rng(seed);
  std::vector<std::size_t> nodes;
  for (int i = 0; i < 100; ++i) nodes.push_back(std::size_t(rng.uniform(0.0, 1.0) * double(g.size())) % g.size());
  double ratio = 0.0, err0 = 0.0;
  for (std::size_t n : nodes) {
    const std::size_t ix = n / g.y_count(), iy = n % g.y_count();
    const Vec3 y = g.y(iy);
    const double phase = std::sin(k1 * g.x(ix)[0]);
    const double bump = std::exp(-y.squaredNorm() / (2.0 * ic.width * ic.width));
    const Vec3 grad = -K * ic.rho * ic.amplitude * (1.0 + 0.5 * phase) * bump / (ic.width * ic.width) * y;
    const Mat3 M = oracle::pushforward_frame(y);
    const Vec3 exact = M.transpose() * grad;
    for (int i = 0; i < 3; ++i) {
      double tol = 1e-10 * (std::abs(exact[i]) + 1e-12);
      for (int k = 0; k < 3; ++k) tol += std::abs(M(k, i)) * g.dy(k) * g.dy(k) / 3.0 * third;
      tol /= phys.lambda[i];
      const double e = std::abs(force0[i][n] - exact[i] / phys.lambda[i]);
      err0 = std::max(err0, e);
      ratio = std::max(ratio, e / tol);
    }
  }
  r.checks.push_back(info(suite, "initial vertical force max error vs analytic oracle", err0));
  r.checks.push_back(at_most(suite, "initial vertical force error / stencil truncation bound, 100 points", ratio, 1.0));

  double rho_min = INFINITY;
  bool finite = true;
  const solver::RunOutcome o = solver::integrate(sys, s0, {1e-3, 0.1, 1}, [&](long, const solver::SimState& s) {
    for (double v : s.rho) {
      rho_min = std::min(rho_min, v);
      finite = finite && std::isfinite(v);
    }
    for (int i = 0; i < 3; ++i)
      for (double v : s.Y[i]) finite = finite && std::isfinite(v);
  });
  r.checks.push_back(exactly(suite, "100 RK4 steps without invariant violation", o.ok && o.steps == 100, double(o.steps)));
  r.checks.push_back(exactly(suite, "fields finite, density positive along run", finite && rho_min > 0.0, rho_min));

  // Final state: solver force against the dense oracle frame applied to the discrete gradient.
  const solver::SimState& sf = o.state;
  solver::Field ptot(g.size());
  const auto [p1, p2] = sys.pressures(sf, sf.thermal);
  for (std::size_t n = 0; n < g.size(); ++n) ptot[n] = p1[n] + p2[n];
  const solver::Field3 forcef = sys.vertical_pressure_force(sf);
  double scale = 0.0, gap = 0.0;
  for (int i = 0; i < 3; ++i)
    for (double v : forcef[i]) scale = std::max(scale, std::abs(v));
  for (std::size_t n : nodes) {
    const Vec3 y = g.y(n % g.y_count());
    Vec3 grad;
    for (int k = 0; k < 3; ++k) grad[k] = detail::fiber_derivative(g, ptot, n, k);
    const Vec3 expect = oracle::pushforward_frame(y).transpose() * grad;
    for (int i = 0; i < 3; ++i) gap = std::max(gap, std::abs(forcef[i][n] - expect[i] / phys.lambda[i]));
  }
  r.checks.push_back(at_most(suite, "final vertical force vs dense frame on discrete gradient (relative)",
                             gap / std::max(scale, 1e-300), 1e-9));
  r.seconds = clock.seconds();
  r.checks.push_back(at_most(suite, "wall seconds", r.seconds, 300.0));
  return r;
}

}  // namespace cosserat::verify
