#include <gtest/gtest.h>

#include <cmath>

#include "cosserat/thermo.hpp"

using namespace cosserat;
using so3::Mat3;
using so3::Vec3;
using bundle::MediaConnectionForm;
using thermo::PressureLaw;

namespace {

MixedTensor sample_delta() {
  Mat6 m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = 0.1 * (i + 1) - 0.05 * j * j + (i == j ? 0.3 : 0.0);
  return MixedTensor(m);
}

}  // namespace

TEST(Pressure, LawAndDerivatives) {
  const thermo::PressureCoefficients c{0.5, 0.2, 0.1};
  const double T = 1.7, rho = 0.8, h = 1e-6;
  EXPECT_DOUBLE_EQ(c.value(T, rho), rho * (0.5 + 0.2 * T + 0.1 * T * std::log(T)));
  EXPECT_NEAR(c.partial_T(T, rho), (c.value(T + h, rho) - c.value(T - h, rho)) / (2 * h), 1e-8);
  EXPECT_NEAR(c.partial_rho(T), (c.value(T, rho + h) - c.value(T, rho - h)) / (2 * h), 1e-8);
  EXPECT_NEAR(c.energy_coefficient(T, rho), c.value(T, rho) - T * c.partial_T(T, rho), 1e-14);
}

TEST(Pressure, DomainChecks) {
  const PressureLaw law{{1, 0, 0}, {0, 0, 0}};
  EXPECT_THROW(law.evaluate(0.0, 1.0), DomainError);
  EXPECT_THROW(law.evaluate(1.0, -1.0), DomainError);
  EXPECT_THROW(law.evaluate(std::nan(""), 1.0), DomainError);
}

TEST(Stress, ZeroConnectionExample) {
  const auto s = thermo::euler_stress(1.0, 2.0, MediaConnectionForm::zero());
  Mat6 expect = Mat6::Zero();
  expect.diagonal() << 1, 1, 1, 3, 3, 3;
  EXPECT_EQ(s.matrix(), expect);
}

TEST(Stress, ConnectionCouplingEntry) {
  Mat3 w = Mat3::Zero();
  w(0, 1) = 1.0;
  const auto s = thermo::euler_stress(0.0, 5.0, MediaConnectionForm(w));
  EXPECT_DOUBLE_EQ(s(kVertical + 0, kHorizontal + 1), 5.0);  // E1 (x) d2
  EXPECT_DOUBLE_EQ(s(kHorizontal + 1, kVertical + 0), 0.0);
}

TEST(Stress, MomentumStressSplitsPressures) {
  const MediaConnectionForm w(Mat3::Identity() * 0.3);
  const auto s = thermo::momentum_stress(2.0, 0.5, w);
  const Mat6 expect = 0.5 * bundle::horizontal_projector(w).matrix();
  EXPECT_DOUBLE_EQ(s(kVertical + 1, kVertical + 1), expect(kVertical + 1, kVertical + 1) + 2.5);
  EXPECT_DOUBLE_EQ(s(kHorizontal, kHorizontal), 0.5);
}

TEST(StateEquations, GibbsEnergyAndDerivatives) {
  const PressureLaw law{{0.3, 0.2, 0.1}, {-0.2, 0.4, 0.05}};
  const MixedTensor d = sample_delta();
  const double T = 1.3, rho = 0.9, h = 1e-6;
  const auto f = thermo::state_equations(law, T, rho, d);
  EXPECT_DOUBLE_EQ(f.h, thermo::gibbs_energy(law, T, rho, d));
  EXPECT_NEAR(f.s, (thermo::gibbs_energy(law, T + h, rho, d) - thermo::gibbs_energy(law, T - h, rho, d)) / (2 * h),
              1e-8);
  EXPECT_NEAR(f.xi, (thermo::gibbs_energy(law, T, rho + h, d) - thermo::gibbs_energy(law, T, rho - h, d)) / (2 * h),
              1e-8);
  EXPECT_NEAR(f.epsilon, thermo::energy_density(law, T, rho, d), 1e-14);
  EXPECT_NEAR(f.epsilon, thermo::energy_density_from_traces(law, T, rho, d.trace(), d.vertical_trace()), 1e-14);
}

TEST(StateEquations, StressIsGradientInDelta) {
  const PressureLaw law{{0.3, 0.2, 0.1}, {-0.2, 0.4, 0.05}};
  const MixedTensor d = sample_delta();
  const double T = 1.3, rho = 0.9, h = 1e-6;
  const auto f = thermo::state_equations(law, T, rho, d);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      MixedTensor e;
      e(a, b) = h;
      const double g = (thermo::gibbs_energy(law, T, rho, d + e) - thermo::gibbs_energy(law, T, rho, d - e)) / (2 * h);
      EXPECT_NEAR(stress_pairing(f.sigma, e * (1.0 / h)), g, 1e-8);
    }
}

TEST(Temperature, RecoveryInvertsEnergy) {
  const PressureLaw law{{0.0, -0.3, 0.2}, {0.0, -0.2, 0.1}};
  const double rho = 1.1, tr = 0.4, trv = -0.1;
  for (double T : {0.05, 0.7, 1.0, 3.5, 40.0}) {
    const double eps = thermo::energy_density_from_traces(law, T, rho, tr, trv);
    EXPECT_NEAR(thermo::recover_temperature(law, rho, tr, trv, eps), T, 1e-10 * T);
  }
}

TEST(Temperature, FailsWithoutTemperatureDependence) {
  const PressureLaw law{{0.5, 0.2, 0.0}, {0.1, 0.0, 0.0}};
  EXPECT_THROW(thermo::recover_temperature(law, 1.0, 0.3, 0.1, 0.2), TemperatureRecoveryFailed);
  const PressureLaw law2{{0.0, 0.0, 0.2}, {0.0, 0.0, 0.1}};
  EXPECT_THROW(thermo::recover_temperature(law2, 1.0, 0.0, 0.0, 0.2), TemperatureRecoveryFailed);
}

TEST(Temperature, FailsOutsideBracket) {
  const PressureLaw law{{0.0, 0.0, 0.2}, {0.0, 0.0, 0.0}};
  // epsilon = -0.2 rho T tr, tr > 0: positive energy unreachable
  EXPECT_THROW(thermo::recover_temperature(law, 1.0, 1.0, 0.0, 5.0), TemperatureRecoveryFailed);
}

TEST(Divergence, ZeroConnectionComponents) {
  const PressureLaw law{{0.5, 0.2, 0.0}, {0.3, 0.1, 0.0}};
  const thermo::ScalarJet T{1.2, Vec3(0.1, 0, 0), Vec3(0, 0.2, 0)};
  const thermo::ScalarJet rho{0.7, Vec3(0, 0.3, 0), Vec3(0, 0, 0.1)};
  const auto p = thermo::pressure_jets(law, T, rho);
  const auto w = MediaConnectionForm::zero();
  const Vec6 div = thermo::div_stress(p, w);
  EXPECT_LE((div.segment<3>(kHorizontal) - p.p2.dx).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((div.segment<3>(kVertical) - p.p1.dE - p.p2.dE).cwiseAbs().maxCoeff(), 1e-15);
  const metric::InertiaSpectrum<double> lam(1, 2, 4);
  EXPECT_LE((thermo::div_flat_stress(lam, p, w) - thermo::div_flat_stress_printed(lam, p, w)).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Divergence, PressureJetChainRule) {
  const PressureLaw law{{0.5, 0.2, 0.1}, {0.3, 0.1, 0.0}};
  const thermo::ScalarJet T{1.2, Vec3(0.1, -0.2, 0), Vec3(0, 0.2, 0)};
  const thermo::ScalarJet rho{0.7, Vec3(0, 0.3, 0), Vec3(0, 0, 0.1)};
  const auto p = thermo::pressure_jets(law, T, rho);
  const double h = 1e-6;
  const double num = (law.p1.value(T.value + h * T.dx[1], rho.value + h * rho.dx[1]) -
                      law.p1.value(T.value - h * T.dx[1], rho.value - h * rho.dx[1])) /
                     (2 * h);
  EXPECT_NEAR(p.p1.dx[1], num, 1e-8);
}
