#include <gtest/gtest.h>

#include <random>

#include "cosserat/so3.hpp"

using namespace cosserat;
using so3::Mat3;
using so3::Vec3;

namespace {

Mat3 series_exp(const Vec3& w) {
  const Mat3 k = so3::hat(w).matrix();
  Mat3 term = Mat3::Identity(), sum = Mat3::Identity();
  for (int n = 1; n < 30; ++n) {
    term = term * k / double(n);
    sum += term;
  }
  return sum;
}

Vec3 random_vec(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3 v(u(rng), u(rng), u(rng));
  return v.normalized() * r * std::abs(u(rng));
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Hat, ZeroAndFirstAxis) {
  EXPECT_EQ(so3::hat(Vec3::Zero()).matrix(), Mat3::Zero());
  Mat3 e1;
  e1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  EXPECT_EQ(so3::hat(Vec3(1, 0, 0)).matrix(), e1);
}

TEST(Hat, MatchesCrossProduct) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 100; ++n) {
    const Vec3 v = random_vec(rng, 3.0), u = random_vec(rng, 3.0);
    EXPECT_LE((so3::hat(v).matrix() * u - v.cross(u)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Vee, InvertsHat) {
  EXPECT_EQ(so3::vee(so3::SkewMatrix::from_matrix(Mat3::Zero())), Vec3::Zero());
  EXPECT_EQ(so3::vee(so3::hat(Vec3(1, 2, 3))), Vec3(1, 2, 3));
  std::mt19937_64 rng(2);
  for (int n = 0; n < 100; ++n) {
    const Vec3 v = random_vec(rng, 5.0);
    EXPECT_EQ(so3::vee(so3::SkewMatrix::from_matrix(so3::hat(v).matrix())), v);
  }
}

TEST(Vee, RejectsNonSkew) {
  Mat3 m = Mat3::Zero();
  m(0, 1) = 1.0;
  EXPECT_THROW(so3::SkewMatrix::from_matrix(m), DomainError);
}

TEST(Exp, IdentityAndQuarterTurn) {
  EXPECT_LE(max_abs(so3::exp_rodrigues(Vec3::Zero()).matrix() - Mat3::Identity()), 0.0);
  Mat3 q;
  q << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LE(max_abs(so3::exp_rodrigues(Vec3(0, 0, so3::kPi / 2)).matrix() - q), 1e-15);
  EXPECT_LE(max_abs(so3::exp_rodrigues(Vec3(0, 0, so3::kPi / 2)).matrix() - series_exp(Vec3(0, 0, so3::kPi / 2))),
            1e-14);
}

TEST(Exp, HalfTurnIsAxisSymmetric) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 100; ++n) {
    const Vec3 axis = random_vec(rng, 1.0).normalized();
    EXPECT_LE(max_abs(so3::exp_rodrigues(so3::kPi * axis).matrix() - so3::exp_rodrigues(-so3::kPi * axis).matrix()),
              1e-12);
  }
}

TEST(Exp, MatchesPowerSeries) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 200; ++n) {
    const Vec3 w = random_vec(rng, 3.0);
    EXPECT_LE(max_abs(so3::exp_rodrigues(w).matrix() - series_exp(w)), 1e-12);
  }
  EXPECT_LE(max_abs(so3::exp_rodrigues(Vec3(1e-10, 0, 0)).matrix() - series_exp(Vec3(1e-10, 0, 0))), 1e-16);
}

TEST(Log, Examples) {
  EXPECT_EQ(so3::log_rotation(so3::Rotation::identity()), Vec3::Zero());
  const Vec3 w(0.3, -0.2, 0.1);
  EXPECT_LE((so3::log_rotation(so3::exp_rodrigues(w)) - w).cwiseAbs().maxCoeff(), 1e-12);
  const Vec3 near(0.0, 3.0, 0.0);
  EXPECT_LE((so3::log_rotation(so3::exp_rodrigues(near)) - near).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Log, NearPiRaisesAndFallbackRecoversAxis) {
  const Vec3 w = (so3::kPi - 1e-9) * Vec3(1, 2, 2).normalized();
  const auto r = so3::exp_rodrigues(w);
  EXPECT_THROW(so3::log_rotation(r), AngleNearPi);
  const auto f = so3::log_rotation_with_fallback(r);
  EXPECT_TRUE(f.near_pi);
  EXPECT_LE((f.w - w).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Log, RoundTripRandom) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 w = random_vec(rng, 3.0);
    EXPECT_LE((so3::log_rotation(so3::exp_rodrigues(w)) - w).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Rotation, ValidatesAndReorthonormalizes) {
  Mat3 m = Mat3::Identity();
  m(0, 0) = 1.01;
  EXPECT_THROW(so3::Rotation::from_matrix(m), DomainError);
  EXPECT_THROW(so3::Rotation::from_matrix(-Mat3::Identity()), DomainError);
  const auto r = so3::Rotation::reorthonormalized(m);
  EXPECT_LE(max_abs(r.matrix() * r.matrix().transpose() - Mat3::Identity()), 1e-14);
}

TEST(Bch, Identities) {
  const Vec3 x(0.3, -0.4, 0.5);
  EXPECT_LE((so3::bch(x, Vec3::Zero()) - x).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((so3::bch(Vec3::Zero(), x) - x).cwiseAbs().maxCoeff(), 1e-15);
  const Vec3 n = Vec3(1, -2, 0.5).normalized();
  EXPECT_LE((so3::bch(0.7 * n, 1.1 * n) - 1.8 * n).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Bch, MatchesLogOfProduct) {
  std::mt19937_64 rng(6);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 x = random_vec(rng, 1.0), y = random_vec(rng, 1.0);
    const Vec3 ref = so3::log_rotation(so3::exp_rodrigues(x) * so3::exp_rodrigues(y));
    EXPECT_LE((so3::bch(x, y) - ref).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Bch, ObtuseProductAngle) {
  // product angle beyond pi/2, where arcsin alone would pick the wrong branch
  const Vec3 x(1.4, 0.0, 0.0), y(0.9, 0.6, 0.0);
  const Vec3 ref = so3::log_rotation(so3::exp_rodrigues(x) * so3::exp_rodrigues(y));
  ASSERT_GT(ref.norm(), so3::kPi / 2);
  EXPECT_LE((so3::bch(x, y) - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Bch, BranchCutRaises) {
  const Vec3 x(so3::kPi / 2, 0, 0);
  EXPECT_THROW(so3::bch(x, x + Vec3(1e-9, 0, 0)), BranchCut);
}

TEST(Frame, IdentityAtOriginAndInverseCoframe) {
  EXPECT_LE(max_abs(so3::left_invariant_frame(Vec3::Zero()).matrix - Mat3::Identity()), 0.0);
  EXPECT_LE(max_abs(so3::coframe(Vec3::Zero()).matrix - Mat3::Identity()), 0.0);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const Vec3 y = random_vec(rng, 3.0);
    EXPECT_LE(max_abs(so3::coframe(y).matrix * so3::left_invariant_frame(y).matrix - Mat3::Identity()), 1e-12);
  }
}

TEST(Frame, MatchesPushforwardOfRightTranslation) {
  std::mt19937_64 rng(8);
  const double h = 1e-5;
  for (int n = 0; n < 50; ++n) {
    const Vec3 y = random_vec(rng, 2.5);
    const auto f = so3::left_invariant_frame(y);
    for (int j = 0; j < 3; ++j) {
      const auto g = [&](double t) {
        return so3::log_rotation(so3::exp_rodrigues(y) * so3::exp_rodrigues(t * Vec3::Unit(j)));
      };
      const Vec3 col = (g(h) - g(-h)) / (2 * h);
      EXPECT_LE((col - f.field(j)).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Frame, ChartGuard) {
  EXPECT_THROW(so3::left_invariant_frame(Vec3(so3::kPi, 0, 0)), ChartBoundary);
  EXPECT_THROW(so3::coframe(Vec3(0, 0, 4.0)), ChartBoundary);
}

TEST(Frame, SmallAngleBranchIsContinuous) {
  const Vec3 below(0.0, 0.99e-4, 0.0), above(0.0, 1.01e-4, 0.0);
  EXPECT_LE(max_abs(so3::left_invariant_frame(below).matrix - so3::left_invariant_frame(above).matrix), 1e-5);
  EXPECT_LE(max_abs(so3::coframe(below).matrix - so3::coframe(above).matrix), 1e-5);
}
