#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <gmpxx.h>

#include "cosserat/invariant_metric.hpp"
#include "cosserat/so3.hpp"
#include "cosserat/verify/checks.hpp"
#include "cosserat/verify/oracles.hpp"

namespace cosserat::verify {

using so3::Mat3;
using so3::Vec3;

inline Mat3 frame_matrix(const Vec3& y) { return so3::left_invariant_frame(y).matrix; }

/// Max deviation of the finite-difference brackets [E_s1, E_s2] from sign(s) E_s3 over all
/// permutations s, at chart point y and step h.
inline double bracket_error(const Vec3& y, double h, so3::FrameConvention conv = so3::FrameConvention::LeftInvariant) {
  const auto frame = [conv](const Vec3& p) { return so3::left_invariant_frame(p, conv).matrix; };
  const Mat3 f = frame(y);
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const int c = 3 - a - b;
      const Vec3 expected = double(metric::levi_civita(a, b, c)) * f.col(c);
      worst = std::max(worst, (oracle::bracket_fd(frame, y, a, b, h) - expected).cwiseAbs().maxCoeff());
    }
  return worst;
}

/// 1000-case exp/log and BCH suites, frame brackets with Richardson refinement.
inline CriterionReport criterion_so3_kernel(std::uint64_t seed = 1) {
  Stopwatch clock;
  CriterionReport r{1, "SO(3) kernel", {}, 0.0};
  oracle::Sampler rng(seed);
  const std::string suite = "so3";

  double roundtrip = 0.0, series = 0.0, orth = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Vec3 w = rng.in_shell(1e-6, so3::kPi - 0.01);
    const so3::Rotation R = so3::exp_rodrigues(w);
    roundtrip = std::max(roundtrip, (so3::log_rotation(R) - w).norm());
    series = std::max(series, (R.matrix() - oracle::series_exp(w)).cwiseAbs().maxCoeff());
    orth = std::max(orth, (R.matrix() * R.matrix().transpose() - Mat3::Identity()).cwiseAbs().maxCoeff());
  }
  r.checks.push_back(at_most(suite, "log(exp(w)) roundtrip, 1000 cases", roundtrip, 1e-10));
  r.checks.push_back(at_most(suite, "Rodrigues vs power-series exp, 1000 cases", series, 1e-12));
  r.checks.push_back(at_most(suite, "orthogonality of exp(w)", orth, 1e-12));

  double bch_err = 0.0, bch_hom = 0.0;
  for (int n = 0; n < 1000;) {
    const Vec3 x = rng.in_shell(0.0, 1.5), y = rng.in_shell(0.0, 1.5);
    const Mat3 prod = oracle::series_exp(x) * oracle::series_exp(y);
    const Vec3 ref = oracle::quaternion_log(prod);
    if (ref.norm() >= so3::kPi - 0.01) continue;
    const Vec3 z = so3::bch(x, y);
    bch_err = std::max(bch_err, (z - ref).norm());
    bch_hom = std::max(bch_hom, (oracle::series_exp(z) - prod).cwiseAbs().maxCoeff());
    ++n;
  }
  r.checks.push_back(at_most(suite, "bch vs log of product, 1000 pairs", bch_err, 1e-10));
  r.checks.push_back(at_most(suite, "exp(bch(X,Y)) = exp(X)exp(Y), 1000 pairs", bch_hom, 1e-10));

  const std::array<double, 3> steps{2e-2, 1e-2, 5e-3};
  std::vector<double> level(3, 0.0);
  double push = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec3 y = rng.in_shell(0.05, 2.5);
    for (int l = 0; l < 3; ++l) level[l] = std::max(level[l], bracket_error(y, steps[l]));
    push = std::max(push, (oracle::pushforward_frame(y) - frame_matrix(y)).cwiseAbs().maxCoeff());
  }
  r.checks.push_back(at_most(suite, "frame bracket residual at h=5e-3, 100 points x 6 permutations", level[2], 1e-4));
  r.checks.push_back(at_least(suite, "frame bracket observed order (Richardson h, h/2, h/4)", min_order(level), 1.9));
  r.checks.push_back(at_most(suite, "frame vs pushforward oracle, 100 points", push, 1e-8));

  r.seconds = clock.seconds();
  r.checks.push_back(at_most(suite, "runtime seconds", r.seconds, 10.0));
  return r;
}

/// Additional so3 rows: Maurer-Cartan sign, coframe inverse, printed-sign bracket.
inline std::vector<Check> so3_extra_checks(std::uint64_t seed = 2) {
  std::vector<Check> out;
  oracle::Sampler rng(seed);
  const auto cof = [](const Vec3& p) { return so3::coframe(p).matrix; };
  double inv = 0.0, mc = 0.0, mc_opposite = 0.0;
  double printed_bracket = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec3 y = rng.in_shell(0.05, 2.5);
    inv = std::max(inv, (so3::coframe(y).matrix * frame_matrix(y) - Mat3::Identity()).cwiseAbs().maxCoeff());
    mc = std::max(mc, oracle::maurer_cartan_residual(cof, y, 0, 1, 2, 1.0, 1e-4));
    mc_opposite = std::max(mc_opposite, oracle::maurer_cartan_residual(cof, y, 0, 1, 2, -1.0, 1e-4));
    const auto fp = [](const Vec3& p) {
      return so3::left_invariant_frame(p, so3::FrameConvention::PrintedRotationalSign).matrix;
    };
    const Vec3 br = oracle::bracket_fd(fp, y, 0, 1, 1e-4);
    printed_bracket = std::max(printed_bracket, (br + fp(y).col(2)).cwiseAbs().maxCoeff());
  }
  out.push_back(at_most("so3", "coframe * frame = I, 100 points", inv, 1e-12));
  out.push_back(at_most("so3", "dOmega3 + Omega1^Omega2 = 0 (measured sign +)", mc, 1e-6));
  out.push_back(info("so3", "dOmega3 - Omega1^Omega2 residual (opposite sign)", mc_opposite));
  out.push_back(info("so3", "printed rotational sign: [E1,E2] + E3 residual", printed_bracket));
  return out;
}

using Rational = mpq_class;

inline metric::InertiaSpectrum<Rational> random_rational_lambda(oracle::Sampler& rng) {
  auto q = [&] {
    Rational v(rng.integer(1, 60), rng.integer(1, 17));
    v.canonicalize();
    return v;
  };
  return {q(), q(), q()};
}

inline metric::InertiaSpectrum<double> random_lambda(oracle::Sampler& rng) {
  return {rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0)};
}

/// max over (i, j, k) of |(Gamma_ij^k + Gamma_ji^k)_a - (Gamma_ij^k + Gamma_ji^k)_b|
inline double symmetric_part_gap(const metric::ChristoffelTable<double>& a, const metric::ChristoffelTable<double>& b) {
  double gap = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        gap = std::max(gap, std::abs((a(i, j, k) + a(j, i, k)) - (b(i, j, k) + b(j, i, k))));
  return gap;
}

/// Exact Christ1/Christ2 checks on rational spectra, and mode agreement of symmetric parts.
inline CriterionReport criterion_christoffel(std::uint64_t seed = 3) {
  Stopwatch clock;
  CriterionReport r{2, "Christoffel adjudication", {}, 0.0};
  oracle::Sampler rng(seed);
  const std::string suite = "christoffel";
  using metric::ChristoffelMode;

  int koszul_metric_bad = 0, koszul_torsion_bad = 0, elimination_bad = 0;
  int paper_torsion_bad = 0, paper_residual_not_lambda = 0;
  Rational paper_residual_example;
  for (int n = 0; n < 50; ++n) {
    const auto lam = random_rational_lambda(rng);
    const auto kz = metric::christoffel(lam, ChristoffelMode::Koszul);
    const auto pl = metric::christoffel(lam, ChristoffelMode::PaperLiteral);
    if (metric::metric_compatibility_residual(kz, lam) != 0) ++koszul_metric_bad;
    if (metric::torsion_residual(kz) != 0) ++koszul_torsion_bad;
    if (metric::torsion_residual(pl) != 0) ++paper_torsion_bad;
    const Rational res = metric::metric_compatibility_residual(pl, lam);
    if (n == 0) paper_residual_example = res;
    if (res != lam.total()) ++paper_residual_not_lambda;
    const auto solved = oracle::solve_levi_civita_exact({lam[0], lam[1], lam[2]});
    bool same = solved.has_value();
    for (int i = 0; same && i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if ((*solved)[9 * i + 3 * j + k] != kz(i, j, k)) same = false;
    if (!same) ++elimination_bad;
  }
  r.checks.push_back(exactly(suite, "koszul: metric compatibility exact (50 rational spectra, failures)",
                             koszul_metric_bad == 0, koszul_metric_bad));
  r.checks.push_back(exactly(suite, "koszul: torsion-free exact (failures)", koszul_torsion_bad == 0,
                             koszul_torsion_bad));
  r.checks.push_back(exactly(suite, "koszul equals exact elimination of both systems (failures)",
                             elimination_bad == 0, elimination_bad));
  r.checks.push_back(exactly(suite, "paper_literal: torsion-free exact (failures)", paper_torsion_bad == 0,
                             paper_torsion_bad));
  r.checks.push_back(exactly(suite, "paper_literal: metric-compatibility residual equals lambda (mismatches)",
                             paper_residual_not_lambda == 0, paper_residual_not_lambda));
  r.checks.push_back(info(suite, "paper_literal: metric-compatibility residual, first sample", paper_residual_example.get_d()));

  double gap = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto lam = random_lambda(rng);
    gap = std::max(gap, symmetric_part_gap(metric::christoffel(lam, ChristoffelMode::PaperLiteral),
                                           metric::christoffel(lam, ChristoffelMode::Koszul)));
  }
  r.checks.push_back(at_most(suite, "symmetric parts agree across modes, 100 spectra", gap, 1e-13));
  r.seconds = clock.seconds();
  return r;
}

/// Isotropy, scale invariance, generic Koszul formula.
inline std::vector<Check> christoffel_extra_checks(std::uint64_t seed = 4) {
  using metric::ChristoffelMode;
  std::vector<Check> out;
  oracle::Sampler rng(seed);
  const auto iso = metric::christoffel(metric::InertiaSpectrum<double>(2.0, 2.0, 2.0), ChristoffelMode::Koszul);
  double iso_err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) iso_err = std::max(iso_err, std::abs(iso(i, j, k) - 0.5 * metric::levi_civita(i, j, k)));
  out.push_back(at_most("christoffel", "isotropy: Gamma = sign/2", iso_err, 1e-15));

  double scale = 0.0, generic = 0.0;
  for (int n = 0; n < 100; ++n) {
    const auto lam = random_lambda(rng);
    const double c = rng.uniform(0.1, 10.0);
    const metric::InertiaSpectrum<double> scaled(c * lam[0], c * lam[1], c * lam[2]);
    for (auto mode : {ChristoffelMode::PaperLiteral, ChristoffelMode::Koszul}) {
      const auto a = metric::christoffel(lam, mode), b = metric::christoffel(scaled, mode);
      for (int i = 0; i < 27; ++i) scale = std::max(scale, std::abs(a(i / 9, (i / 3) % 3, i % 3) - b(i / 9, (i / 3) % 3, i % 3)));
    }
    const auto kz = metric::christoffel(lam, ChristoffelMode::Koszul);
    const auto ref = oracle::koszul_generic({lam[0], lam[1], lam[2]},
                                            [](int i, int j, int k) { return double(metric::levi_civita(i, j, k)); });
    for (int i = 0; i < 27; ++i) generic = std::max(generic, std::abs(kz(i / 9, (i / 3) % 3, i % 3) - ref[i]));
  }
  out.push_back(at_most("christoffel", "scale invariance, both modes", scale, 1e-13));
  out.push_back(at_most("christoffel", "koszul vs generic Koszul formula", generic, 1e-14));
  return out;
}

}  // namespace cosserat::verify
