#pragma once

// Reference computations that share no formulas with the library code they check:
// power-series exponential, quaternion logarithm, finite-difference pushforwards and
// brackets, exact rational elimination, generic Koszul formula, dense metric inverse.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "cosserat/bundle.hpp"
#include "cosserat/invariant_metric.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::oracle {

using so3::Mat3;
using so3::Vec3;

inline Mat3 skew(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0;
  return m;
}

/// exp by truncated power series (30 terms) with scaling and squaring.
inline Mat3 series_exp(const Vec3& w, int terms = 30) {
  int squarings = 0;
  double n = w.norm();
  while (n > 0.5) {
    n *= 0.5;
    ++squarings;
  }
  const Mat3 a = skew(w) / std::ldexp(1.0, squarings);
  Mat3 sum = Mat3::Identity(), term = Mat3::Identity();
  for (int k = 1; k < terms; ++k) {
    term = term * a / double(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Rotation vector from a rotation matrix through its unit quaternion (Shepperd's method).
inline Vec3 quaternion_log(const Mat3& r) {
  const double tr = r.trace();
  double q[4];  // w, x, y, z
  if (tr > r(0, 0) && tr > r(1, 1) && tr > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q[0] = 0.25 * s;
    q[1] = (r(2, 1) - r(1, 2)) / s;
    q[2] = (r(0, 2) - r(2, 0)) / s;
    q[3] = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q[0] = (r(2, 1) - r(1, 2)) / s;
    q[1] = 0.25 * s;
    q[2] = (r(0, 1) + r(1, 0)) / s;
    q[3] = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q[0] = (r(0, 2) - r(2, 0)) / s;
    q[1] = (r(0, 1) + r(1, 0)) / s;
    q[2] = 0.25 * s;
    q[3] = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q[0] = (r(1, 0) - r(0, 1)) / s;
    q[1] = (r(0, 2) + r(2, 0)) / s;
    q[2] = (r(1, 2) + r(2, 1)) / s;
    q[3] = 0.25 * s;
  }
  if (q[0] < 0.0)
    for (double& c : q) c = -c;
  const Vec3 v(q[1], q[2], q[3]);
  const double sn = v.norm();
  if (sn < 1e-300) return Vec3::Zero();
  const double angle = 2.0 * std::atan2(sn, q[0]);
  return v * (angle / sn);
}

/// Fourth-order central difference of a vector-valued function along t at 0.
template <class F>
Vec3 derivative4(F&& f, double h) {
  return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

/// Column j: d/dt log(exp(y) exp(t e_j)) at t = 0.
inline Mat3 pushforward_frame(const Vec3& y, double h = 1e-3) {
  const Mat3 base = series_exp(y);
  Mat3 m;
  for (int j = 0; j < 3; ++j) {
    m.col(j) = derivative4([&](double t) { return quaternion_log(base * series_exp(t * Vec3::Unit(j))); }, h);
  }
  return m;
}

/// Lie bracket [E_a, E_b] of coordinate vector fields given by a frame function, by
/// central-difference Jacobians with step h.
inline Vec3 bracket_fd(const std::function<Mat3(const Vec3&)>& frame, const Vec3& y, int a, int b, double h) {
  Mat3 ja, jb;  // ja(:, k) = d/dy_k of column a
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    const Mat3 fp = frame(y + e), fm = frame(y - e);
    ja.col(k) = (fp.col(a) - fm.col(a)) / (2.0 * h);
    jb.col(k) = (fp.col(b) - fm.col(b)) / (2.0 * h);
  }
  const Mat3 f = frame(y);
  return jb * f.col(a) - ja * f.col(b);
}

/// Max component of d(Omega_c) + s * Omega_a ^ Omega_b at y, with the coframe rows given by a
/// function and the exterior derivative by central differences of step h.
inline double maurer_cartan_residual(const std::function<Mat3(const Vec3&)>& coframe, const Vec3& y, int a, int b,
                                     int c, double s, double h) {
  Mat3 grad;  // grad(k, l) = d/dy_k of component l of Omega_c
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    grad.row(k) = (coframe(y + e).row(c) - coframe(y - e).row(c)) / (2.0 * h);
  }
  const Mat3 w = coframe(y);
  double worst = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double d = grad(k, l) - grad(l, k);
      const double wedge = w(a, k) * w(b, l) - w(a, l) * w(b, k);
      worst = std::max(worst, std::abs(d + s * wedge));
    }
  return worst;
}

/// Solves metric compatibility and zero torsion (structure constants eps_ijk) for all 27
/// Christoffel symbols by exact elimination. Empty when the system is not uniquely solvable.
inline std::optional<std::array<mpq_class, 27>> solve_levi_civita_exact(const std::array<mpq_class, 3>& lam) {
  const int unknowns = 27;
  std::vector<std::vector<mpq_class>> rows;
  auto idx = [](int i, int j, int k) { return 9 * i + 3 * j + k; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        std::vector<mpq_class> r(unknowns + 1, mpq_class(0));
        r[idx(i, j, k)] += lam[k];
        r[idx(i, k, j)] += lam[j];
        rows.push_back(r);
        std::vector<mpq_class> t(unknowns + 1, mpq_class(0));
        t[idx(i, j, k)] += 1;
        t[idx(j, i, k)] -= 1;
        t[unknowns] = mpq_class(metric::levi_civita(i, j, k));
        rows.push_back(t);
      }
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < unknowns && rank < int(rows.size()); ++col) {
    int p = -1;
    for (int r = rank; r < int(rows.size()); ++r)
      if (rows[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows[rank], rows[p]);
    const mpq_class inv = mpq_class(1) / rows[rank][col];
    for (auto& v : rows[rank]) v *= inv;
    for (int r = 0; r < int(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const mpq_class f = rows[r][col];
      for (int c = col; c <= unknowns; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < int(rows.size()); ++r)
    if (rows[r][unknowns] != 0) return std::nullopt;
  if (rank != unknowns) return std::nullopt;
  std::array<mpq_class, 27> out;
  for (int r = 0; r < rank; ++r) out[pivot_col[r]] = rows[r][unknowns];
  return out;
}

/// Koszul formula for a left-invariant metric diag(lam) with structure constants c(i, j, k)
/// ([E_i, E_j] = sum_k c_ijk E_k):
/// 2 g(nabla_i E_j, E_k) = g([E_i,E_j],E_k) - g([E_j,E_k],E_i) + g([E_k,E_i],E_j).
inline std::array<double, 27> koszul_generic(const std::array<double, 3>& lam,
                                             const std::function<double(int, int, int)>& c) {
  std::array<double, 27> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double v = c(i, j, k) * lam[k] - c(j, k, i) * lam[i] + c(k, i, j) * lam[j];
        g[9 * i + 3 * j + k] = v / (2.0 * lam[k]);
      }
  return g;
}

/// Gram matrix of g^mu in the (d, E) basis written out directly.
inline Mat6 dense_metric(const std::array<double, 3>& lam, const Mat3& w) {
  const Mat3 L = Eigen::Vector3d(lam[0], lam[1], lam[2]).asDiagonal();
  Mat6 g;
  g.block<3, 3>(0, 0) = Mat3::Identity() + w.transpose() * L * w;
  g.block<3, 3>(0, 3) = w.transpose() * L;
  g.block<3, 3>(3, 0) = L * w;
  g.block<3, 3>(3, 3) = L;
  return g;
}

inline Vec6 dense_raise(const std::array<double, 3>& lam, const Mat3& w, const Vec6& covector) {
  return dense_metric(lam, w).inverse() * covector;
}

/// Scalar function on the bundle chart.
using BundleScalar = std::function<double(const Vec3& x, const Vec3& y)>;

/// Coordinate gradient (x part, y part) by fourth-order differences of step h.
inline std::pair<Vec3, Vec3> gradient4(const BundleScalar& f, const Vec3& x, const Vec3& y, double h = 1e-3) {
  Vec3 gx, gy;
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = Vec3::Unit(k);
    gx[k] = (-f(x + 2 * h * e, y) + 8 * f(x + h * e, y) - 8 * f(x - h * e, y) + f(x - 2 * h * e, y)) / (12 * h);
    gy[k] = (-f(x, y + 2 * h * e) + 8 * f(x, y + h * e) - 8 * f(x, y - h * e) + f(x, y - 2 * h * e)) / (12 * h);
  }
  return {gx, gy};
}

/// E_j f = (pushforward frame)^T grad_y f.
inline Vec3 frame_gradient(const BundleScalar& f, const Vec3& x, const Vec3& y) {
  return pushforward_frame(y).transpose() * gradient4(f, x, y).second;
}

/// Divergence of a (1,1)-tensor field S = sum S_ab F_a (x) C_b taken term by term:
/// component b is sum_a F_a(S_ab), F = (d_1..d_3, E_1..E_3) with E from the pushforward frame.
inline Vec6 brute_divergence(const std::function<Mat6(const Vec3&, const Vec3&)>& S, const Vec3& x, const Vec3& y) {
  Vec6 out = Vec6::Zero();
  const Mat3 frame = pushforward_frame(y);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const BundleScalar entry = [&](const Vec3& xx, const Vec3& yy) { return S(xx, yy)(a, b); };
      const auto [gx, gy] = gradient4(entry, x, y);
      out[b] += a < 3 ? gx[a] : frame.col(a - 3).dot(gy);
    }
  return out;
}

/// Deterministic random helpers for property checks.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Vec3 vec(double lo, double hi) { return Vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)); }
  Vec3 unit() {
    Vec3 v;
    do v = vec(-1.0, 1.0);
    while (v.norm() < 1e-3 || v.norm() > 1.0);
    return v.normalized();
  }
  /// Random vector with norm in (lo, hi).
  Vec3 in_shell(double lo, double hi) { return unit() * uniform(lo, hi); }
  Mat3 mat(double lo, double hi) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace cosserat::oracle
