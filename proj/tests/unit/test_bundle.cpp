#include <gtest/gtest.h>

#include <random>

#include "cosserat/bundle.hpp"

using namespace cosserat;
using so3::Mat3;
using so3::Vec3;
using bundle::MediaConnectionForm;
using metric::ChristoffelMode;
using metric::InertiaSpectrum;

namespace {

Mat3 random_mat(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 m;
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = u(rng);
  return m;
}

Vec6 random_vec6(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec6 v;
  for (int i = 0; i < 6; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST(Connection, RejectsNonFinite) {
  Mat3 w = Mat3::Zero();
  w(1, 2) = std::nan("");
  EXPECT_THROW(MediaConnectionForm{w}, DomainError);
}

TEST(Splitting, ZeroConnectionIsIdentity) {
  const Vec6 u = (Vec6() << 1, 2, 3, 4, 5, 6).finished();
  const auto s = bundle::split(MediaConnectionForm::zero(), u);
  EXPECT_EQ(s.horizontal, Vec3(1, 2, 3));
  EXPECT_EQ(s.vertical, Vec3(4, 5, 6));
}

TEST(Splitting, RoundTrip) {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 100; ++n) {
    const MediaConnectionForm w(random_mat(rng));
    const Vec6 u = random_vec6(rng);
    EXPECT_LE((bundle::reassemble(w, bundle::split(w, u)) - u).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(HorizontalFrame, SplitsWithoutVerticalPart) {
  std::mt19937_64 rng(32);
  const MediaConnectionForm w(random_mat(rng));
  const auto h = bundle::horizontal_frame(w);
  const auto th = bundle::theta_forms(w);
  for (int i = 0; i < 3; ++i) {
    EXPECT_LE(bundle::split(w, h[i]).vertical.cwiseAbs().maxCoeff(), 1e-15);
    for (int j = 0; j < 3; ++j) {
      Vec6 e = Vec6::Zero();
      e[kVertical + j] = 1.0;
      EXPECT_NEAR(th[i].dot(h[j]), 0.0, 1e-15);
      EXPECT_NEAR(th[i].dot(e), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Metric, DenseMatrixAndRaise) {
  std::mt19937_64 rng(33);
  const InertiaSpectrum<double> lam(1.0, 1.5, 2.0);
  for (int n = 0; n < 50; ++n) {
    const MediaConnectionForm w(random_mat(rng));
    const Vec6 u = random_vec6(rng), v = random_vec6(rng);
    const Mat6 g = bundle::metric_mu_matrix(lam, w);
    EXPECT_NEAR(u.dot(g * v), bundle::metric_mu(lam, w, u, v), 1e-13);
    EXPECT_LE((g - g.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((g * bundle::raise(lam, w, u) - u).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Metric, HorizontalAndVerticalAreOrthogonal) {
  const InertiaSpectrum<double> lam(1.0, 2.0, 3.0);
  Mat3 m;
  m << 0.1, 0.2, 0.3, -0.4, 0.5, 0.0, 0.7, 0.0, -0.2;
  const MediaConnectionForm w(m);
  for (const auto& h : bundle::horizontal_frame(w))
    for (int j = 0; j < 3; ++j) {
      Vec6 e = Vec6::Zero();
      e[kVertical + j] = 1.0;
      EXPECT_NEAR(bundle::metric_mu(lam, w, h, e), 0.0, 1e-15);
    }
}

TEST(Projectors, IdempotentAndComplementary) {
  std::mt19937_64 rng(34);
  const MediaConnectionForm w(random_mat(rng));
  const Mat6 pv = bundle::vertical_projector(w).matrix(), ph = bundle::horizontal_projector(w).matrix();
  EXPECT_LE((pv * pv - pv).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((ph * ph - ph).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((pv * ph).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LE((pv + ph - Mat6::Identity()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(bundle::vertical_projector(w).trace(), 3.0, 1e-15);
}

TEST(Deformation, ConstantVerticalFieldOnUnitSpectrum) {
  const auto t = metric::christoffel(InertiaSpectrum<double>(1, 1, 1), ChristoffelMode::PaperLiteral);
  bundle::FieldJet j;
  j.Y = Vec3(1, 0, 0);
  const auto d = bundle::deformation_tensor(j, t);
  EXPECT_DOUBLE_EQ(d(kVertical + 1, kVertical + 2), 2.0);
  EXPECT_DOUBLE_EQ(d(kVertical + 2, kVertical + 1), 1.0);
  EXPECT_DOUBLE_EQ(bundle::trace_full(d), 0.0);
}

TEST(Deformation, TracesOfLinearField) {
  // X = A x, Y = B x: Tr Delta = tr A, vertical trace zero (Christoffel diagonal vanishes)
  std::mt19937_64 rng(35);
  const Mat3 a = random_mat(rng), b = random_mat(rng);
  const bundle::ClosureField f([&](const Vec3& x) -> Vec3 { return a * x; },
                               [&](const Vec3& x, const Vec3&) -> Vec3 { return b * x; });
  const auto t = metric::christoffel(InertiaSpectrum<double>(1, 2, 3), ChristoffelMode::Koszul);
  const bundle::BundlePoint p{Vec3(0.1, 0.2, 0.3), Vec3(0.4, -0.2, 0.1)};
  const auto d = bundle::deformation_tensor(f, p, t);
  EXPECT_NEAR(bundle::trace_full(d), a.trace(), 1e-9);
  EXPECT_NEAR(bundle::trace_vertical(d), 0.0, 1e-9);
  EXPECT_LE((d.hh() - a).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LE((d.vh() - b).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Deformation, ProjectedVerticalTraceWithoutHvBlock) {
  std::mt19937_64 rng(36);
  const MediaConnectionForm w(random_mat(rng));
  MixedTensor d(Mat6::Random());
  d.hv() = Mat3::Zero();
  EXPECT_NEAR(bundle::trace_vertical(d, w), bundle::trace_vertical(d), 1e-14);
}
