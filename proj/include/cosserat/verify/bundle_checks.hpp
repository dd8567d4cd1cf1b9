#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cosserat/bundle.hpp"
#include "cosserat/thermo.hpp"
#include "cosserat/verify/checks.hpp"
#include "cosserat/verify/kernel_checks.hpp"
#include "cosserat/verify/oracles.hpp"
#include "cosserat/verify/thermo_checks.hpp"

namespace cosserat::verify {

namespace detail {

/// U = sum (off_i + sin(a_i.x)) d_i + cos(b_i.x) (1 + sin(c_i.y) / 2) E_i with exact jets.
struct AnalyticField {
  Mat3 a, b, c;
  Vec3 off;

  bundle::FieldJet jet(const bundle::BundlePoint& p) const {
    bundle::FieldJet j;
    Mat3 dYdy;
    for (int i = 0; i < 3; ++i) {
      const double ax = a.row(i).dot(p.x), bx = b.row(i).dot(p.x), cy = c.row(i).dot(p.y);
      j.X[i] = off[i] + std::sin(ax);
      j.Y[i] = std::cos(bx) * (1.0 + 0.5 * std::sin(cy));
      j.dX.row(i) = std::cos(ax) * a.row(i);
      j.dY.row(i) = -std::sin(bx) * (1.0 + 0.5 * std::sin(cy)) * b.row(i);
      dYdy.row(i) = std::cos(bx) * 0.5 * std::cos(cy) * c.row(i);
    }
    j.eY = dYdy * so3::left_invariant_frame(p.y).matrix;
    return j;
  }
  Vec3 X(const Vec3& x) const {
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = off[i] + std::sin(a.row(i).dot(x));
    return v;
  }
  Vec3 Y(const Vec3& x, const Vec3& y) const {
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = std::cos(b.row(i).dot(x)) * (1.0 + 0.5 * std::sin(c.row(i).dot(y)));
    return v;
  }
};

struct LinearCombination {
  double a, b;
  const AnalyticField* u;
  const AnalyticField* w;

  bundle::FieldJet jet(const bundle::BundlePoint& p) const {
    const auto ju = u->jet(p), jw = w->jet(p);
    bundle::FieldJet j;
    j.X = a * ju.X + b * jw.X;
    j.Y = a * ju.Y + b * jw.Y;
    j.dX = a * ju.dX + b * jw.dX;
    j.dY = a * ju.dY + b * jw.dY;
    j.eY = a * ju.eY + b * jw.eY;
    return j;
  }
};

inline AnalyticField random_field(oracle::Sampler& rng) {
  return {rng.mat(-1.0, 1.0), rng.mat(-1.0, 1.0), rng.mat(-1.0, 1.0), rng.vec(-1.0, 1.0)};
}

}  // namespace detail

/// Splitting, duality, orthogonality, deformation linearity and the trace identity.
inline std::vector<Check> bundle_checks(std::uint64_t seed = 10) {
  std::vector<Check> out;
  const std::string suite = "bundle";
  oracle::Sampler rng(seed);
  double split_err = 0.0, dual_err = 0.0, orth_err = 0.0, metric_err = 0.0;
  for (int n = 0; n < 100; ++n) {
    const bundle::MediaConnectionForm w(rng.mat(-1.0, 1.0));
    const auto lam = random_lambda(rng);
    Vec6 u;
    for (int a = 0; a < 6; ++a) u[a] = rng.uniform(-1.0, 1.0);
    split_err = std::max(split_err, (bundle::reassemble(w, bundle::split(w, u)) - u).cwiseAbs().maxCoeff());

    const auto h = bundle::horizontal_frame(w);
    const auto th = bundle::theta_forms(w);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double d = i == j ? 1.0 : 0.0;
        dual_err = std::max(dual_err, std::abs(th[i].dot(Vec6::Unit(kVertical + j)) - d));
        dual_err = std::max(dual_err, std::abs(th[i].dot(h[j])));
        dual_err = std::max(dual_err, std::abs(Vec6::Unit(kHorizontal + i).dot(h[j]) - d));
        dual_err = std::max(dual_err, std::abs(Vec6::Unit(kHorizontal + i).dot(Vec6::Unit(kVertical + j))));
        orth_err = std::max(orth_err, std::abs(bundle::metric_mu(lam, w, h[i], Vec6::Unit(kVertical + j))));
      }
    const Mat6 dense = oracle::dense_metric({lam[0], lam[1], lam[2]}, w.matrix());
    metric_err = std::max(metric_err, (bundle::metric_mu_matrix(lam, w) - dense).cwiseAbs().maxCoeff());
  }
  out.push_back(at_most(suite, "split then reassemble, 100 vectors", split_err, 1e-14));
  out.push_back(at_most(suite, "(theta, d) dual to (E, h), 100 connections", dual_err, 1e-14));
  out.push_back(at_most(suite, "g_mu(h_i, E_j) = 0", orth_err, 1e-13));
  out.push_back(at_most(suite, "g_mu matches dense block metric", metric_err, 1e-13));

  double linear = 0.0, trace_id = 0.0, hv = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto lam = random_lambda(rng);
    const auto table = metric::christoffel(lam, metric::ChristoffelMode::Koszul);
    const auto U = detail::random_field(rng), W = detail::random_field(rng);
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const detail::LinearCombination mix{a, b, &U, &W};
    const bundle::BundlePoint p{rng.vec(0.0, 1.0), rng.in_shell(0.0, 2.0)};
    const MixedTensor du = bundle::deformation_tensor(U, p, table), dw = bundle::deformation_tensor(W, p, table);
    const MixedTensor dm = bundle::deformation_tensor(mix, p, table);
    linear = std::max(linear, (dm - (a * du + b * dw)).matrix().cwiseAbs().maxCoeff());
    hv = std::max(hv, du.hv().cwiseAbs().maxCoeff());

    // div U from the pushforward frame and fourth-order coordinate gradients
    double div = 0.0;
    const Mat3 M = oracle::pushforward_frame(p.y);
    for (int i = 0; i < 3; ++i) {
      const oracle::BundleScalar xi = [&](const Vec3& x, const Vec3&) { return U.X(x)[i]; };
      const oracle::BundleScalar yi = [&](const Vec3& x, const Vec3& y) { return U.Y(x, y)[i]; };
      div += oracle::gradient4(xi, p.x, p.y).first[i] + M.col(i).dot(oracle::gradient4(yi, p.x, p.y).second);
    }
    trace_id = std::max(trace_id, std::abs(bundle::trace_full(du) - div));
  }
  out.push_back(at_most(suite, "deformation linearity, 50 points", linear, 1e-12));
  out.push_back(at_most(suite, "HV block of deformation vanishes", hv, 0.0));
  out.push_back(at_most(suite, "trace_full(Delta U) = div U, 50 points", trace_id, 1e-7));
  return out;
}

/// Discrepancies between literal closed forms and the implemented ones, reported for the record.
inline std::vector<Check> errata_rows(std::uint64_t seed = 11) {
  std::vector<Check> out;
  const std::string suite = "errata";
  oracle::Sampler rng(seed);

  double bch_literal = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec3 x = rng.in_shell(0.1, 1.2), y = rng.in_shell(0.1, 1.2);
    const auto r = so3::bch_with_coefficients(x, y);
    const Vec3 xy = x.cross(y);
    const double c = 0.5 * std::sin(x.norm()) * std::sin(y.norm()) -
                     2.0 * (x.dot(y) / (x.norm() * y.norm())) * std::pow(std::sin(0.5 * x.norm()) * std::sin(0.5 * y.norm()), 2);
    if (std::abs(c) < 1e-6) continue;
    const Vec3 z = r.coefficients.alpha * x + r.coefficients.beta * y + r.coefficients.gamma / c * xy;
    const Mat3 lhs = oracle::series_exp(z), rhs = oracle::series_exp(x) * oracle::series_exp(y);
    bch_literal = std::max(bch_literal, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  out.push_back(info(suite, "BCH with gamma lacking the factor c: product error", bch_literal));

  out.push_back(info(suite, "alpha3 at lambda = (1,1,1)",
                     metric::AlphaCoefficients::from(metric::InertiaSpectrum<double>(1.0, 1.0, 1.0)).a3, 2.0));

  const auto law = random_law(rng);
  const metric::InertiaSpectrum<double> lam(1.0, 2.0, 3.0);
  const bundle::MediaConnectionForm w(rng.mat(-0.5, 0.5));
  const AnalyticThermoFields fields;
  double raise_gap = 0.0, stress_gap = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Vec3 x = rng.vec(0.0, 1.0), y = rng.in_shell(0.0, 1.5);
    const auto jets = thermo::pressure_jets(law, stencil_jet(fields.T, x, y, 1e-3), stencil_jet(fields.rho, x, y, 1e-3));
    raise_gap = std::max(raise_gap, (thermo::div_flat_stress_printed(lam, jets, w) - thermo::div_flat_stress(lam, jets, w))
                                        .cwiseAbs()
                                        .maxCoeff());
    const auto sigma = [&](const Vec3& xx, const Vec3& yy) {
      const auto p = law.evaluate(fields.T(xx, yy), fields.rho(xx, yy));
      return thermo::euler_stress(p.p1, p.p2, w).matrix();
    };
    stress_gap = std::max(stress_gap, (oracle::brute_divergence(sigma, x, y) - thermo::div_stress(jets, w)).cwiseAbs().maxCoeff());
  }
  out.push_back(info(suite, "componentwise div-flat vs exact raise (omega != 0)", raise_gap));
  out.push_back(info(suite, "displayed div sigma vs divergence of h_Delta", stress_gap));
  return out;
}

}  // namespace cosserat::verify
