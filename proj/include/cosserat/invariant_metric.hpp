#pragma once

// Left-invariant metrics on SO(3) and their connection coefficients.
//
// Indices are 0-based in code: Gamma(i, j, k) is the E_k component of
// nabla_{E_i} E_j. Two tables are available:
//   PaperLiteral  the printed closed-form table (torsion-free, not metric)
//   Koszul        the Levi-Civita connection of g(E_i, E_j) = lambda_i delta_ij
//
// Templates take a Scalar so the structural identities can be checked in exact
// rational arithmetic.

#include <array>
#include <string>

#include "cosserat/errors.hpp"
#include "cosserat/mixed_tensor.hpp"
#include "cosserat/so3.hpp"

namespace cosserat::metric {

using so3::Vec3;

/// Levi-Civita symbol on {0,1,2}.
constexpr int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

template <class Scalar = double>
class InertiaSpectrum {
 public:
  InertiaSpectrum(Scalar l1, Scalar l2, Scalar l3) : l_{l1, l2, l3} {
    for (int i = 0; i < 3; ++i) {
      if (!(l_[i] > Scalar(0))) {
        throw DomainError("lambda" + std::to_string(i + 1) + " must be positive");
      }
    }
  }

  const Scalar& operator[](int i) const { return l_[i]; }
  Scalar total() const { return Scalar(l_[0] + l_[1] + l_[2]); }

 private:
  std::array<Scalar, 3> l_;
};

enum class ChristoffelMode { PaperLiteral, Koszul };

template <class Scalar = double>
class ChristoffelTable {
 public:
  explicit ChristoffelTable(ChristoffelMode mode) : mode_(mode) { g_.fill(Scalar(0)); }

  Scalar& operator()(int i, int j, int k) { return g_[9 * i + 3 * j + k]; }
  const Scalar& operator()(int i, int j, int k) const { return g_[9 * i + 3 * j + k]; }
  ChristoffelMode mode() const { return mode_; }

 private:
  std::array<Scalar, 27> g_;
  ChristoffelMode mode_;
};

template <class Scalar>
ChristoffelTable<Scalar> christoffel(const InertiaSpectrum<Scalar>& lam, ChristoffelMode mode) {
  ChristoffelTable<Scalar> t(mode);
  const Scalar total = lam.total();
  if (mode == ChristoffelMode::PaperLiteral) {
    // Gamma_{i,i+1}^{i+2} = (lambda - lambda_i) / lambda_{i+2}, Gamma_{i+1,i}^{i+2} one less.
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      t(i, j, k) = Scalar((total - lam[i]) / lam[k]);
      t(j, i, k) = Scalar(t(i, j, k) - Scalar(1));
    }
    return t;
  }
  // 2 lambda_k Gamma_ij^k = eps_ijk (lambda_j + lambda_k - lambda_i)
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int e = levi_civita(i, j, k);
        if (e == 0) continue;
        t(i, j, k) = Scalar(Scalar(e) * (lam[j] + lam[k] - lam[i]) / (Scalar(2) * lam[k]));
      }
    }
  }
  return t;
}

template <class Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/// max over (i,j,k) of |lambda_k Gamma_ij^k + lambda_j Gamma_ik^j|.
template <class Scalar>
Scalar metric_compatibility_residual(const ChristoffelTable<Scalar>& t, const InertiaSpectrum<Scalar>& lam) {
  Scalar worst(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Scalar r = abs_value(Scalar(lam[k] * t(i, j, k) + lam[j] * t(i, k, j)));
        if (r > worst) worst = r;
      }
  return worst;
}

/// max |Gamma_ij^k - Gamma_ji^k - eps_ijk|: torsion of the table against [E_i, E_j] = eps_ijk E_k.
template <class Scalar>
Scalar torsion_residual(const ChristoffelTable<Scalar>& t) {
  Scalar worst(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Scalar r = abs_value(Scalar(t(i, j, k) - t(j, i, k) - Scalar(levi_civita(i, j, k))));
        if (r > worst) worst = r;
      }
  return worst;
}

inline double metric_vertical(const InertiaSpectrum<double>& lam, const Vec3& u, const Vec3& v) {
  return lam[0] * u[0] * v[0] + lam[1] * u[1] * v[1] + lam[2] * u[2] * v[2];
}

/// E-frame components of nabla_{E_i} E_j.
inline Vec3 covariant_derivative_vertical(const ChristoffelTable<double>& t, int i, int j) {
  return Vec3(t(i, j, 0), t(i, j, 1), t(i, j, 2));
}

/// Coefficients of the quadratic term in the Y-momentum equations:
/// entry i multiplies Y_j Y_k ({i,j,k} distinct) and equals Gamma_jk^i + Gamma_kj^i.
struct GyroscopicCoefficients {
  std::array<double, 3> c{};
};

inline GyroscopicCoefficients gyroscopic_coefficients(const ChristoffelTable<double>& t) {
  GyroscopicCoefficients g;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    g.c[i] = t(j, k, i) + t(k, j, i);
  }
  return g;
}

/// The coupling table lambda_ij written out in the momentum equations
/// (lambda_12 = (lambda - lambda_1)/lambda_3, lambda_13 = (lambda - lambda_1)/lambda_2, ...).
/// Entry (i, j) for i != j; lambda_ij = (lambda - lambda_i) / lambda_k with k the third index.
inline std::array<std::array<double, 3>, 3> coupling_table(const InertiaSpectrum<double>& lam) {
  std::array<std::array<double, 3>, 3> c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const int k = 3 - i - j;
      c[i][j] = (lam.total() - lam[i]) / lam[k];
    }
  return c;
}

/// Gyroscopic coefficients exactly as in the momentum equations:
/// (lambda_23 - lambda_32), (lambda_31 - lambda_13), (lambda_12 - lambda_21).
inline GyroscopicCoefficients printed_gyroscopic_coefficients(const InertiaSpectrum<double>& lam) {
  const auto c = coupling_table(lam);
  GyroscopicCoefficients g;
  g.c[0] = c[1][2] - c[2][1];
  g.c[1] = c[2][0] - c[0][2];
  g.c[2] = c[0][1] - c[1][0];
  return g;
}

/// alpha_1 = (lambda - lambda_2)/lambda_1, alpha_2 = lambda_1/lambda_2, alpha_3 = (lambda - lambda_1)/lambda_3.
struct AlphaCoefficients {
  double a1, a2, a3;

  static AlphaCoefficients from(const InertiaSpectrum<double>& lam) {
    const double total = lam.total();
    return {(total - lam[1]) / lam[0], lam[0] / lam[1], (total - lam[0]) / lam[2]};
  }
};

/// Covariant differential of a basis vector: index 0..2 selects d_i, 3..5 selects E_{i-3}.
/// Entry (E_k row, Omega_j column) of D(E_m) is the coefficient of Omega_j (x) E_k.
inline MixedTensor covariant_differential_frame(const AlphaCoefficients& a, int basis_index) {
  MixedTensor d;
  const int V = kVertical;
  switch (basis_index) {
    case 3:  // (alpha2 + 1) Omega3 (x) E2 + (alpha3 - 1) Omega2 (x) E3
      d(V + 1, V + 2) = a.a2 + 1.0;
      d(V + 2, V + 1) = a.a3 - 1.0;
      break;
    case 4:  // (alpha1 - 1) Omega3 (x) E1 + alpha3 Omega1 (x) E3
      d(V + 0, V + 2) = a.a1 - 1.0;
      d(V + 2, V + 0) = a.a3;
      break;
    case 5:  // alpha1 Omega2 (x) E1 + alpha2 Omega1 (x) E2
      d(V + 0, V + 1) = a.a1;
      d(V + 1, V + 0) = a.a2;
      break;
    default:
      break;  // D(d_i) = 0
  }
  return d;
}

/// D(E_m) from an arbitrary table: sum_jk Gamma_jm^k Omega_j (x) E_k.
inline MixedTensor covariant_differential_frame(const ChristoffelTable<double>& t, int basis_index) {
  MixedTensor d;
  if (basis_index < kVertical) return d;
  const int m = basis_index - kVertical;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) d(kVertical + k, kVertical + j) = t(j, m, k);
  return d;
}

/// Covariant differential of a basis covector (0..2 -> d_i, 3..5 -> Omega_{i-3}).
inline CovariantTensor covariant_differential_coframe(const AlphaCoefficients& a, int basis_index) {
  CovariantTensor d;
  const int V = kVertical;
  switch (basis_index) {
    case 3:  // -alpha1 Omega2 (x) Omega3 - (alpha1 - 1) Omega3 (x) Omega2
      d(V + 1, V + 2) = -a.a1;
      d(V + 2, V + 1) = -(a.a1 - 1.0);
      break;
    case 4:  // -alpha2 Omega1 (x) Omega3 - (alpha2 + 1) Omega3 (x) Omega1
      d(V + 0, V + 2) = -a.a2;
      d(V + 2, V + 0) = -(a.a2 + 1.0);
      break;
    case 5:  // -alpha3 Omega1 (x) Omega2 - (alpha3 - 1) Omega2 (x) Omega1
      d(V + 0, V + 1) = -a.a3;
      d(V + 1, V + 0) = -(a.a3 - 1.0);
      break;
    default:
      break;
  }
  return d;
}

}  // namespace cosserat::metric
