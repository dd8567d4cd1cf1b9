#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cosserat/solver/diagnostics.hpp"
#include "cosserat/solver/initial.hpp"
#include "cosserat/solver/run.hpp"

using namespace cosserat;
using namespace cosserat::solver;

namespace {

GridSpec line_grid(int n) {
  GridSpec g;
  g.x[0] = {n, 1.0, true};
  return g;
}

Physics restoring_physics() {
  Physics p;
  p.law.p1 = {-0.5, 0.0, 0.0};
  p.law.p2 = {-0.2, 0.0, 0.0};
  return p;
}

EulerSystem rotor(const Vec3& lam) {
  Physics p;
  p.lambda = metric::InertiaSpectrum<double>(lam[0], lam[1], lam[2]);
  ModelOptions o;
  o.mode = ScenarioMode::RigidRotor;
  return EulerSystem(BundleGrid(GridSpec{}), p, o);
}

}  // namespace

TEST(Grid, RejectsBadSpec) {
  GridSpec g = line_grid(8);
  g.x[1].n = 0;
  EXPECT_THROW(BundleGrid{g}, ValidationError);
  GridSpec c;
  c.ny = {3, 3, 3};
  c.chart_radius = 3.2;
  EXPECT_THROW(BundleGrid{c}, ValidationError);
}

TEST(Grid, PeriodicDerivativeIsSecondOrder) {
  auto err = [](int n) {
    const BundleGrid g(line_grid(n));
    std::vector<double> f(g.size()), df;
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::sin(2 * std::numbers::pi * g.x(i)[0]);
    dx_bundle(g, f, 0, df);
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      e = std::max(e, std::abs(df[i] - 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * g.x(i)[0])));
    return e;
  };
  EXPECT_NEAR(std::log2(err(32) / err(64)), 2.0, 0.05);
}

TEST(Grid, FrameDerivativeOfChartCoordinate) {
  GridSpec s;
  s.ny = {9, 9, 9};
  s.chart_radius = 0.6;
  const BundleGrid g(s);
  std::vector<double> f(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) f[n] = g.y(n % g.y_count())[2];
  const auto e = frame_derivatives(g, f);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const Mat3 m = so3::left_invariant_frame(g.y(n)).matrix;
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(e[j][n], m(2, j), 1e-12);
  }
}

TEST(Modes, GridShapeValidation) {
  ModelOptions o;
  o.mode = ScenarioMode::RigidRotor;
  EXPECT_THROW(EulerSystem(BundleGrid(line_grid(4)), Physics{}, o), ValidationError);
  o.mode = ScenarioMode::FullBundle;
  EXPECT_THROW(EulerSystem(BundleGrid(line_grid(4)), Physics{}, o), ValidationError);
  GridSpec s = line_grid(4);
  s.ny = {3, 1, 1};
  o.mode = ScenarioMode::ReducedXOnly;
  EXPECT_THROW(EulerSystem(BundleGrid(s), Physics{}, o), ValidationError);
}

TEST(Run, StepCount) {
  EXPECT_EQ(step_count(0.1, 1.0), 10);
  EXPECT_EQ(step_count(0.3, 1.0), 4);
  EXPECT_EQ(step_count(1e-3, 10.0), 10000);
  EXPECT_EQ(step_count(0.5, 0.0), 0);
}

TEST(Run, ObserverCadenceAndFinalTime) {
  const EulerSystem sys(BundleGrid(line_grid(8)), restoring_physics(), ModelOptions{});
  InitialCondition ic;
  ic.kind = InitialKind::SineX1;
  ic.amplitude = 0.1;
  std::vector<long> seen;
  const auto out = integrate(sys, make_initial_state(sys, ic), {0.01, 0.095, 3},
                             [&](long n, const SimState&) { seen.push_back(n); });
  ASSERT_TRUE(out.ok) << out.error_message;
  EXPECT_EQ(out.steps, 10);
  EXPECT_DOUBLE_EQ(out.state.t, 0.095);
  EXPECT_EQ(seen, (std::vector<long>{0, 3, 6, 9, 10}));
}

TEST(Run, AbortKeepsLastValidState) {
  Physics p;
  p.law.p2 = {1.0, 0.0, 0.0};  // anti-restoring: density collapses
  const EulerSystem sys(BundleGrid(line_grid(16)), p, ModelOptions{});
  InitialCondition ic;
  ic.kind = InitialKind::SineX1;
  ic.amplitude = 0.5;
  const auto out = integrate(sys, make_initial_state(sys, ic), {0.01, 50.0, 1});
  EXPECT_FALSE(out.ok);
  EXPECT_FALSE(out.error_kind.empty());
  for (double r : out.state.rho) EXPECT_GT(r, 0.0);
}

TEST(Run, RejectsBadTimeStep) {
  const EulerSystem sys(BundleGrid(line_grid(4)), restoring_physics(), ModelOptions{});
  const auto out = integrate(sys, make_initial_state(sys, {}), {0.0, 1.0, 1});
  EXPECT_FALSE(out.ok);
  EXPECT_EQ(out.error_kind, "DomainError");
}

TEST(Equations, UniformStateIsSteady) {
  const EulerSystem sys(BundleGrid(line_grid(8)), restoring_physics(), ModelOptions{});
  InitialCondition ic;
  ic.X = Vec3(0.2, 0.0, 0.0);
  const SimState r = sys.rhs(make_initial_state(sys, ic));
  for (int i = 0; i < 3; ++i)
    for (double v : r.X[i]) EXPECT_NEAR(v, 0.0, 1e-14);
  for (double v : r.rho) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Equations, RotorAxisIsFixedPoint) {
  const EulerSystem sys = rotor(Vec3(1.0, 2.0, 3.0));
  InitialCondition ic;
  ic.Y = Vec3(0.0, 0.7, 0.0);
  const SimState r = sys.rhs(make_initial_state(sys, ic));
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(r.Y[i][0], 0.0);
}

TEST(Equations, RotorConservesEnergyAndCasimir) {
  const EulerSystem sys = rotor(Vec3(1.0, 2.0, 3.0));
  InitialCondition ic;
  ic.Y = Vec3(0.3, 1.0, 0.2);
  const SimState s0 = make_initial_state(sys, ic);
  const auto d0 = diagnostics(sys, s0, 0, 1e-3);
  const auto out = integrate(sys, s0, {1e-3, 2.0, 100});
  ASSERT_TRUE(out.ok);
  const auto d1 = diagnostics(sys, out.state, out.steps, 1e-3);
  EXPECT_NEAR(d1.rotor_energy, d0.rotor_energy, 1e-10);
  EXPECT_NEAR(d1.casimir, d0.casimir, 1e-10);
}

TEST(Equations, ModesAgreeOnMomentum) {
  const EulerSystem sys = rotor(Vec3(1.0, 1.5, 4.0));
  InitialCondition ic;
  ic.Y = Vec3(0.3, -0.4, 0.5);
  const SimState s = make_initial_state(sys, ic);
  const SimState a = sys.rhs(s), b = sys.with_christoffel(metric::ChristoffelMode::PaperLiteral).rhs(s);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a.Y[i][0], b.Y[i][0], 1e-14);
}

TEST(Equations, MassIsConserved) {
  Physics p = restoring_physics();
  p.omega = bundle::MediaConnectionForm(Mat3::Identity() * 0.2);
  GridSpec s = line_grid(16);
  s.x[1] = {8, 1.0, true};
  const EulerSystem sys(BundleGrid(s), p, ModelOptions{});
  InitialCondition ic;
  ic.kind = InitialKind::SineX1;
  ic.amplitude = 0.2;
  ic.velocity_amplitude = 0.1;
  ic.Y = Vec3(0.1, 0.0, 0.2);
  const SimState s0 = make_initial_state(sys, ic);
  const auto out = integrate(sys, s0, {2e-3, 0.2, 10});
  ASSERT_TRUE(out.ok) << out.error_message;
  EXPECT_NEAR(sys.total_mass(out.state) / sys.total_mass(s0), 1.0, 1e-12);
}

TEST(Equations, EvolvedTemperatureRoundTrip) {
  Physics p;
  p.law.p1 = {0.0, -0.3, 0.2};
  p.law.p2 = {0.0, -0.2, 0.1};
  ModelOptions o;
  o.energy = EnergyMode::Evolved;
  const EulerSystem sys(BundleGrid(line_grid(15)), p, o);
  InitialCondition ic;
  ic.kind = InitialKind::SineX1;
  ic.T = 1.5;
  ic.velocity_amplitude = 0.1;
  const SimState s = make_initial_state(sys, ic);
  const Field T = sys.temperature(s);
  for (double v : T) EXPECT_NEAR(v, 1.5, 1e-10);
}

TEST(Equations, EvolvedZeroDivergenceNodeFails) {
  Physics p;
  p.law.p1 = {0.0, -0.3, 0.2};
  ModelOptions o;
  o.energy = EnergyMode::Evolved;
  const EulerSystem sys(BundleGrid(line_grid(16)), p, o);
  InitialCondition ic;
  ic.kind = InitialKind::SineX1;
  ic.velocity_amplitude = 0.1;
  const SimState s = make_initial_state(sys, ic);
  EXPECT_THROW(sys.temperature(s), TemperatureRecoveryFailed);
}

TEST(Diagnostics, FiberBumpRecord) {
  GridSpec g;
  g.x[0] = {4, 1.0, true};
  g.ny = {5, 5, 5};
  g.chart_radius = 0.8;
  ModelOptions o;
  o.mode = ScenarioMode::FullBundle;
  const EulerSystem sys(BundleGrid(g), restoring_physics(), o);
  InitialCondition ic;
  ic.kind = InitialKind::FiberBump;
  ic.amplitude = 0.3;
  const SimState s = make_initial_state(sys, ic);
  const auto d = diagnostics(sys, s, 0, 1e-3);
  EXPECT_GT(d.rho_max, d.rho_min);
  EXPECT_GE(d.rho_min, 1.0);
  EXPECT_LE(d.rho_max, 1.3 * 1.5 + 1e-12);
  EXPECT_NEAR(d.total_mass, sys.total_mass(s), 1e-14);
}
