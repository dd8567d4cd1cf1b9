#pragma once

#include <Eigen/Dense>

namespace cosserat {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Slot offsets in the bundle frame (d_1..d_3 / E_1..E_3) and coframe
/// (d_1..d_3 / Omega_1..Omega_3).
inline constexpr int kHorizontal = 0;
inline constexpr int kVertical = 3;

/// (1,1)-tensor sum T_ab F_a (x) C_b with F = (d_1..d_3, E_1..E_3) and
/// C = (d_1..d_3, Omega_1..Omega_3). Row a is the vector slot, column b the covector
/// slot, so the tensor acts on a 6-vector v as T v.
class MixedTensor {
 public:
  MixedTensor() : m_(Mat6::Zero()) {}
  explicit MixedTensor(const Mat6& m) : m_(m) {}

  static MixedTensor zero() { return MixedTensor(); }
  static MixedTensor identity() { return MixedTensor(Mat6::Identity()); }

  double& operator()(int a, int b) { return m_(a, b); }
  double operator()(int a, int b) const { return m_(a, b); }

  const Mat6& matrix() const { return m_; }
  Mat6& matrix() { return m_; }

  // Blocks named (vector part, covector part).
  auto hh() { return m_.block<3, 3>(kHorizontal, kHorizontal); }
  auto hv() { return m_.block<3, 3>(kHorizontal, kVertical); }
  auto vh() { return m_.block<3, 3>(kVertical, kHorizontal); }
  auto vv() { return m_.block<3, 3>(kVertical, kVertical); }
  auto hh() const { return m_.block<3, 3>(kHorizontal, kHorizontal); }
  auto hv() const { return m_.block<3, 3>(kHorizontal, kVertical); }
  auto vh() const { return m_.block<3, 3>(kVertical, kHorizontal); }
  auto vv() const { return m_.block<3, 3>(kVertical, kVertical); }

  double trace() const { return m_.trace(); }
  double vertical_trace() const { return vv().trace(); }

  MixedTensor operator+(const MixedTensor& o) const { return MixedTensor(m_ + o.m_); }
  MixedTensor operator-(const MixedTensor& o) const { return MixedTensor(m_ - o.m_); }
  MixedTensor operator*(double s) const { return MixedTensor(m_ * s); }
  friend MixedTensor operator*(double s, const MixedTensor& t) { return t * s; }
  MixedTensor& operator+=(const MixedTensor& o) {
    m_ += o.m_;
    return *this;
  }

 private:
  Mat6 m_;
};

/// (0,2)-tensor sum B_ab C_a (x) C_b with C the coframe above; slot a is the
/// differentiation direction for covariant differentials.
class CovariantTensor {
 public:
  CovariantTensor() : m_(Mat6::Zero()) {}
  explicit CovariantTensor(const Mat6& m) : m_(m) {}
  double& operator()(int a, int b) { return m_(a, b); }
  double operator()(int a, int b) const { return m_(a, b); }
  const Mat6& matrix() const { return m_; }

 private:
  Mat6 m_;
};

/// Tr(sigma* Delta) realized as Tr(sigma . Delta).
inline double stress_pairing(const MixedTensor& sigma, const MixedTensor& delta) {
  return (sigma.matrix() * delta.matrix()).trace();
}

}  // namespace cosserat
