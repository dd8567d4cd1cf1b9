#pragma once

// SO(3) / so(3) kernel: hat and vee, Rodrigues exponential, principal
// logarithm, closed-form Baker-Campbell-Hausdorff composition and the
// left-invariant frame in canonical coordinates of the first kind.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cosserat/errors.hpp"

namespace cosserat::so3 {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
/// Canonical coordinates are used on the open ball ||y|| < pi - kChartMargin.
inline constexpr double kChartMargin = 1e-6;
inline constexpr double kExpTaylorBelow = 1e-8;
inline constexpr double kFrameTaylorBelow = 1e-4;
/// log() refuses rotations with trace <= -1 + kNearPiTrace.
inline constexpr double kNearPiTrace = 1e-6;
inline constexpr double kOrthogonalityTol = 1e-12;

/// Element of so(3), stored as its axial vector.
class SkewMatrix {
 public:
  SkewMatrix() : axial_(Vec3::Zero()) {}
  explicit SkewMatrix(const Vec3& axial) : axial_(axial) {}

  /// Reads the three independent entries; throws if `a` is not skew.
  static SkewMatrix from_matrix(const Mat3& a, double tol = 0.0) {
    if ((a + a.transpose()).cwiseAbs().maxCoeff() > tol || a.diagonal().cwiseAbs().maxCoeff() > tol) {
      throw DomainError("matrix is not skew-symmetric");
    }
    return SkewMatrix(Vec3(a(2, 1), a(0, 2), a(1, 0)));
  }

  Mat3 matrix() const {
    Mat3 m;
    m << 0.0, -axial_.z(), axial_.y(),
         axial_.z(), 0.0, -axial_.x(),
         -axial_.y(), axial_.x(), 0.0;
    return m;
  }

  const Vec3& axial() const { return axial_; }
  Vec3 apply(const Vec3& u) const { return axial_.cross(u); }

 private:
  Vec3 axial_;
};

inline SkewMatrix hat(const Vec3& v) { return SkewMatrix(v); }
inline Vec3 vee(const SkewMatrix& a) { return a.axial(); }

/// Element of SO(3). Construction validates orthogonality and det = 1.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation from_matrix(const Mat3& m) {
    const double orth = (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
    const double det = m.determinant();
    if (!(orth <= kOrthogonalityTol) || !(std::abs(det - 1.0) <= kOrthogonalityTol)) {
      throw DomainError("matrix is not a rotation (||RR^T - I|| = " + std::to_string(orth) +
                        ", det = " + std::to_string(det) + ")");
    }
    return Rotation(m);
  }

  /// Explicit projection onto SO(3) (polar factor); never applied implicitly.
  static Rotation reorthonormalized(const Mat3& m) {
    Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1.0 : 1.0;
    return from_matrix(svd.matrixU() * d * svd.matrixV().transpose());
  }

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  Rotation transpose() const { return Rotation(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return from_matrix(m_ * o.m_); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// Rotation angle in [0, pi].
  double angle() const {
    const Vec3 s(m_(2, 1) - m_(1, 2), m_(0, 2) - m_(2, 0), m_(1, 0) - m_(0, 1));
    return std::atan2(0.5 * s.norm(), 0.5 * (m_.trace() - 1.0));
  }

 private:
  explicit Rotation(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

inline Rotation exp_rodrigues(const Vec3& w) {
  const double phi = w.norm();
  const Mat3 k = hat(w).matrix();
  if (phi < kExpTaylorBelow) {
    return Rotation::from_matrix(Mat3::Identity() + k + 0.5 * k * k);
  }
  const Mat3 n = k / phi;
  return Rotation::from_matrix(Mat3::Identity() + std::sin(phi) * n + (1.0 - std::cos(phi)) * n * n);
}

struct LogResult {
  Vec3 w;
  bool near_pi = false;  ///< axis-extraction fallback was used
};

namespace detail {

inline Vec3 half_axial(const Mat3& r) {
  return 0.5 * Vec3(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
}

}  // namespace detail

/// Logarithm with axis extraction from the symmetric part near angle pi.
inline LogResult log_rotation_with_fallback(const Rotation& rot) {
  const Mat3& r = rot.matrix();
  const Vec3 s = detail::half_axial(r);  // sin(phi) n
  const double sin_phi = s.norm();
  const double cos_phi = 0.5 * (r.trace() - 1.0);
  const double phi = std::atan2(sin_phi, cos_phi);

  if (r.trace() > -1.0 + kNearPiTrace) {
    const double scale = phi < kExpTaylorBelow ? 1.0 + phi * phi / 6.0 : phi / sin_phi;
    return {scale * s, false};
  }

  // (R + R^T)/2 = cos(phi) I + (1 - cos(phi)) n n^T
  const Mat3 nn = (0.5 * (r + r.transpose()) - cos_phi * Mat3::Identity()) / (1.0 - cos_phi);
  Eigen::Index k = 0;
  nn.diagonal().maxCoeff(&k);
  Vec3 n = nn.col(k) / std::sqrt(nn(k, k));
  n.normalize();
  if (n.dot(s) < 0.0) n = -n;
  return {phi * n, true};
}

/// Principal logarithm; angle of the result lies in [0, pi).
inline Vec3 log_rotation(const Rotation& rot) {
  if (rot.matrix().trace() <= -1.0 + kNearPiTrace) {
    throw AngleNearPi("rotation angle too close to pi for the principal logarithm; "
                      "use log_rotation_with_fallback");
  }
  return log_rotation_with_fallback(rot).w;
}

struct BchCoefficients {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.5;
};

struct BchResult {
  Vec3 z;
  BchCoefficients coefficients;
};

namespace detail {

/// (phi/2) cot(phi/2)
inline double half_cot(double phi) {
  if (phi < kFrameTaylorBelow) return 1.0 - phi * phi / 12.0 - phi * phi * phi * phi / 720.0;
  const double h = 0.5 * phi;
  return h * std::cos(h) / std::sin(h);
}

/// (1 - (phi/2) cot(phi/2)) / phi^2
inline double radial_coefficient(double phi) {
  if (phi < kFrameTaylorBelow) return 1.0 / 12.0 + phi * phi / 720.0;
  return (1.0 - half_cot(phi)) / (phi * phi);
}

}  // namespace detail

/// Z with exp(Z) = exp(X) exp(Y), as Z = alpha X + beta Y + gamma X x Y.
inline BchResult bch_with_coefficients(const Vec3& x, const Vec3& y) {
  constexpr double tiny = 1e-12;
  const double theta = x.norm();
  const double phi = y.norm();

  BchCoefficients c;
  if (theta < tiny && phi < tiny) {
    c = {1.0, 1.0, 0.5};
  } else if (theta < tiny) {
    c = {detail::half_cot(phi), 1.0, 0.5};
  } else if (phi < tiny) {
    c = {1.0, detail::half_cot(theta), 0.5};
  } else {
    const double omega = std::clamp(x.dot(y) / (theta * phi), -1.0, 1.0);
    const double st = std::sin(theta), sp = std::sin(phi);
    const double cht = std::cos(0.5 * theta), chp = std::cos(0.5 * phi);
    const double sht = std::sin(0.5 * theta), shp = std::sin(0.5 * phi);

    const double a = st * chp * chp - omega * sp * sht * sht;
    const double b = sp * cht * cht - omega * st * shp * shp;
    const double cc = 0.5 * st * sp - 2.0 * omega * sht * sht * shp * shp;
    const double d = std::sqrt(std::max(0.0, a * a + b * b + 2.0 * omega * a * b + (1.0 - omega * omega) * cc * cc));

    // scalar part of the unit quaternion of the product
    const double qs = cht * chp - omega * sht * shp;
    const double psi = std::atan2(d, 2.0 * qs * qs - 1.0);
    if (psi >= kPi - kChartMargin) {
      throw BranchCut("product rotation angle " + std::to_string(psi) + " is on the branch cut");
    }
    const double ratio = d < 1e-8 ? 1.0 + psi * psi / 6.0 : psi / d;
    c = {ratio * a / theta, ratio * b / phi, ratio * cc / (theta * phi)};
  }
  return {c.alpha * x + c.beta * y + c.gamma * x.cross(y), c};
}

inline Vec3 bch(const Vec3& x, const Vec3& y) { return bch_with_coefficients(x, y).z; }

/// Column j holds the coordinate components of E_j at chart point y.
struct FrameCoefficients {
  Mat3 matrix;
  Vec3 field(int j) const { return matrix.col(j); }
};

/// Row i holds the components of Omega_i in the coordinate coframe dy.
struct CoframeCoefficients {
  Mat3 matrix;
  Vec3 form(int i) const { return matrix.row(i).transpose(); }
};

/// `LeftInvariant` satisfies [E1, E2] = E3. `PrintedRotationalSign` uses the
/// opposite rotational term, whose fields bracket to -E3.
enum class FrameConvention { LeftInvariant, PrintedRotationalSign };

inline void check_chart(const Vec3& y) {
  if (!(y.norm() < kPi - kChartMargin)) {
    throw ChartBoundary("canonical coordinates outside the chart ball (||y|| = " + std::to_string(y.norm()) + ")");
  }
}

inline FrameCoefficients left_invariant_frame(const Vec3& y, FrameConvention convention = FrameConvention::LeftInvariant) {
  check_chart(y);
  const double phi = y.norm();
  const double sign = convention == FrameConvention::LeftInvariant ? 1.0 : -1.0;
  return {detail::half_cot(phi) * Mat3::Identity() + 0.5 * sign * hat(y).matrix() +
          detail::radial_coefficient(phi) * y * y.transpose()};
}

/// Inverse of left_invariant_frame in closed form.
inline CoframeCoefficients coframe(const Vec3& y, FrameConvention convention = FrameConvention::LeftInvariant) {
  check_chart(y);
  const double phi = y.norm();
  const double sign = convention == FrameConvention::LeftInvariant ? 1.0 : -1.0;
  double c1, c2;
  if (phi < kFrameTaylorBelow) {
    const double p2 = phi * phi;
    c1 = 0.5 - p2 / 24.0;
    c2 = 1.0 / 6.0 - p2 / 120.0;
  } else {
    c1 = (1.0 - std::cos(phi)) / (phi * phi);
    c2 = (phi - std::sin(phi)) / (phi * phi * phi);
  }
  const Mat3 k = hat(y).matrix();
  return {Mat3::Identity() - sign * c1 * k + c2 * k * k};
}

}  // namespace cosserat::so3
