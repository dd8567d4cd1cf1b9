#pragma once

// The SO(3) frame bundle over the spatial domain: media connection,
// horizontal/vertical splitting, associated metric g^mu and the
// rate-of-deformation tensor of a projectable field.
//
// Bundle vectors are 6-vectors in the basis (d_1, d_2, d_3, E_1, E_2, E_3);
// covectors use (d_1, d_2, d_3, Omega_1, Omega_2, Omega_3).

#include <array>
#include <functional>

#include "cosserat/invariant_metric.hpp"
#include "cosserat/mixed_tensor.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::bundle {

using so3::Mat3;
using so3::Vec3;

/// Constant coefficients omega_ij of the media connection; row i is the
/// 1-form omega_i = sum_j omega_ij d_j.
class MediaConnectionForm {
 public:
  MediaConnectionForm() : w_(Mat3::Zero()) {}
  explicit MediaConnectionForm(const Mat3& w) : w_(w) {
    if (!w_.allFinite()) throw DomainError("media connection coefficients must be finite");
  }

  static MediaConnectionForm zero() { return MediaConnectionForm(); }

  double operator()(int i, int j) const { return w_(i, j); }
  const Mat3& matrix() const { return w_; }
  bool homogeneous() const { return true; }

 private:
  Mat3 w_;
};

struct BundlePoint {
  Vec3 x = Vec3::Zero();
  Vec3 y = Vec3::Zero();
};

/// h_i = d_i - sum_j omega_ji E_j, returned as 6-vectors.
inline std::array<Vec6, 3> horizontal_frame(const MediaConnectionForm& w) {
  std::array<Vec6, 3> h;
  for (int i = 0; i < 3; ++i) {
    h[i].setZero();
    h[i][kHorizontal + i] = 1.0;
    for (int j = 0; j < 3; ++j) h[i][kVertical + j] = -w(j, i);
  }
  return h;
}

/// theta_i = Omega_i + sum_j omega_ij d_j, returned as 6-covectors.
inline std::array<Vec6, 3> theta_forms(const MediaConnectionForm& w) {
  std::array<Vec6, 3> th;
  for (int i = 0; i < 3; ++i) {
    th[i].setZero();
    th[i][kVertical + i] = 1.0;
    for (int j = 0; j < 3; ++j) th[i][kHorizontal + j] = w(i, j);
  }
  return th;
}

/// Components of a bundle vector in the g^mu-orthogonal frame (h_1..h_3, E_1..E_3).
struct Splitting {
  Vec3 horizontal;  ///< coefficients on h_i
  Vec3 vertical;    ///< coefficients on E_i
};

inline Splitting split(const MediaConnectionForm& w, const Vec6& u) {
  const Vec3 hu = u.segment<3>(kHorizontal);
  return {hu, u.segment<3>(kVertical) + w.matrix() * hu};
}

inline Vec6 reassemble(const MediaConnectionForm& w, const Splitting& s) {
  Vec6 u;
  u.segment<3>(kHorizontal) = s.horizontal;
  u.segment<3>(kVertical) = s.vertical - w.matrix() * s.horizontal;
  return u;
}

/// g_lambda on the vertical part plus the Euclidean product on the horizontal part.
inline double metric_mu(const metric::InertiaSpectrum<double>& lam, const MediaConnectionForm& w, const Vec6& u,
                        const Vec6& v) {
  const Splitting su = split(w, u), sv = split(w, v);
  return su.horizontal.dot(sv.horizontal) + metric::metric_vertical(lam, su.vertical, sv.vertical);
}

/// Gram matrix of g^mu in the (d, E) basis.
inline Mat6 metric_mu_matrix(const metric::InertiaSpectrum<double>& lam, const MediaConnectionForm& w) {
  Mat6 g;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) g(a, b) = metric_mu(lam, w, Vec6::Unit(a), Vec6::Unit(b));
  return g;
}

/// Raise a covector (d, Omega components) with g^mu.
inline Vec6 raise(const metric::InertiaSpectrum<double>& lam, const MediaConnectionForm& w, const Vec6& covector) {
  const Vec3 b = covector.segment<3>(kHorizontal);
  const Vec3 a = covector.segment<3>(kVertical);
  // covector = sum a_i theta_i + sum c_j d_j with c = b - omega^T a
  const Vec3 c = b - w.matrix().transpose() * a;
  Vec3 vert;
  for (int i = 0; i < 3; ++i) vert[i] = a[i] / lam[i];
  return reassemble(w, {c, vert});
}

/// Pi_V = sum E_i (x) theta_i.
inline MixedTensor vertical_projector(const MediaConnectionForm& w) {
  MixedTensor p;
  p.vv() = Mat3::Identity();
  p.vh() = w.matrix();
  return p;
}

/// Pi_H = sum h_i (x) d_i.
inline MixedTensor horizontal_projector(const MediaConnectionForm& w) {
  return MixedTensor::identity() - vertical_projector(w);
}

/// First jet of a projectable field U = sum X_i(x) d_i + Y_i(x, y) E_i at a bundle point.
struct FieldJet {
  Vec3 X = Vec3::Zero();
  Vec3 Y = Vec3::Zero();
  Mat3 dX = Mat3::Zero();  ///< (i, j) = d_j X_i
  Mat3 dY = Mat3::Zero();  ///< (i, j) = d_j Y_i
  Mat3 eY = Mat3::Zero();  ///< (i, j) = E_j(Y_i)
};

template <class E>
concept JetEvaluator = requires(const E& e, const BundlePoint& p) {
  { e.jet(p) } -> std::convertible_to<FieldJet>;
};

/// Projectable field given by closures; X cannot depend on the fiber by construction.
/// Jets are formed with central differences of step `h` in x and in the chart
/// coordinates y, followed by the frame map E_j = sum_k M_kj d/dy_k.
class ClosureField {
 public:
  using HorizontalFn = std::function<Vec3(const Vec3&)>;
  using VerticalFn = std::function<Vec3(const Vec3&, const Vec3&)>;

  ClosureField(HorizontalFn x, VerticalFn y, double h = 1e-5) : x_(std::move(x)), y_(std::move(y)), h_(h) {}

  Vec3 X(const Vec3& x) const { return x_(x); }
  Vec3 Y(const Vec3& x, const Vec3& y) const { return y_(x, y); }

  FieldJet jet(const BundlePoint& p) const {
    FieldJet j;
    j.X = x_(p.x);
    j.Y = y_(p.x, p.y);
    Mat3 dYdy;
    for (int k = 0; k < 3; ++k) {
      const Vec3 e = h_ * Vec3::Unit(k);
      j.dX.col(k) = (x_(p.x + e) - x_(p.x - e)) / (2.0 * h_);
      j.dY.col(k) = (y_(p.x + e, p.y) - y_(p.x - e, p.y)) / (2.0 * h_);
      dYdy.col(k) = (y_(p.x, p.y + e) - y_(p.x, p.y - e)) / (2.0 * h_);
    }
    j.eY = dYdy * so3::left_invariant_frame(p.y).matrix;
    return j;
  }

 private:
  HorizontalFn x_;
  VerticalFn y_;
  double h_;
};

/// Delta(U) = sum (d_j X_i d_j (x) d_i + d_j Y_i d_j (x) E_i + E_j(Y_i) Omega_j (x) E_i) + sum Y_i D(E_i).
inline MixedTensor deformation_tensor(const FieldJet& jet, const metric::ChristoffelTable<double>& table) {
  MixedTensor t;
  t.hh() = jet.dX;
  t.vh() = jet.dY;
  t.vv() = jet.eY;
  for (int m = 0; m < 3; ++m) {
    if (jet.Y[m] == 0.0) continue;
    t += jet.Y[m] * metric::covariant_differential_frame(table, kVertical + m);
  }
  return t;
}

template <JetEvaluator E>
MixedTensor deformation_tensor(const E& field, const BundlePoint& p, const metric::ChristoffelTable<double>& table) {
  return deformation_tensor(field.jet(p), table);
}

inline double trace_full(const MixedTensor& t) { return t.trace(); }
/// Sum of the VV diagonal.
inline double trace_vertical(const MixedTensor& t) { return t.vertical_trace(); }
/// Tr(Delta Pi_V); equals trace_vertical when the HV block vanishes or omega = 0.
inline double trace_vertical(const MixedTensor& t, const MediaConnectionForm& w) {
  return (t.matrix() * vertical_projector(w).matrix()).trace();
}

}  // namespace cosserat::bundle
