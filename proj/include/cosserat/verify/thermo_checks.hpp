#pragma once

#include <algorithm>
#include <cmath>

#include "cosserat/bundle.hpp"
#include "cosserat/thermo.hpp"
#include "cosserat/verify/checks.hpp"
#include "cosserat/verify/oracles.hpp"

namespace cosserat::verify {

using so3::Mat3;
using so3::Vec3;

inline thermo::PressureLaw random_law(oracle::Sampler& rng) {
  auto coeff = [&] {
    const double c = rng.uniform(0.1, 1.0) * (rng.integer(0, 1) ? 1.0 : -1.0);
    return thermo::PressureCoefficients{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), c};
  };
  return {coeff(), coeff()};
}

inline MixedTensor random_tensor(oracle::Sampler& rng, double scale = 1.0) {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) m(a, b) = rng.uniform(-scale, scale);
  return MixedTensor(m);
}

/// State equations by finite differences, first law along random paths, negative control.
inline CriterionReport criterion_state_equations(std::uint64_t seed = 5) {
  Stopwatch clock;
  CriterionReport r{3, "Thermodynamic state equations", {}, 0.0};
  oracle::Sampler rng(seed);
  const std::string suite = "thermo";

  double sigma_err = 0.0, s_err = 0.0, xi_err = 0.0;
  for (int n = 0; n < 20; ++n) {
    const auto law = random_law(rng);
    const bundle::MediaConnectionForm w(rng.mat(-0.5, 0.5));
    const double T = rng.uniform(0.5, 2.0), rho = rng.uniform(0.5, 2.0);
    const MixedTensor delta = random_tensor(rng);
    const auto st = thermo::state_equations(law, T, rho, delta, w);
    const double step = 1e-6;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        MixedTensor up = delta, dn = delta;
        up(b, a) += step;
        dn(b, a) -= step;
        const double fd = (thermo::gibbs_energy(law, T, rho, up, w) - thermo::gibbs_energy(law, T, rho, dn, w)) / (2 * step);
        sigma_err = std::max(sigma_err, std::abs(fd - st.sigma(a, b)));
      }
    const double fdT = (thermo::gibbs_energy(law, T + step, rho, delta, w) -
                        thermo::gibbs_energy(law, T - step, rho, delta, w)) / (2 * step);
    const double fdr = (thermo::gibbs_energy(law, T, rho + step, delta, w) -
                        thermo::gibbs_energy(law, T, rho - step, delta, w)) / (2 * step);
    s_err = std::max(s_err, std::abs(fdT - st.s));
    xi_err = std::max(xi_err, std::abs(fdr - st.xi));
  }
  r.checks.push_back(at_most(suite, "sigma = h_Delta by finite differences", sigma_err, 1e-6));
  r.checks.push_back(at_most(suite, "s = h_T by finite differences", s_err, 1e-6));
  r.checks.push_back(at_most(suite, "xi = h_rho by finite differences", xi_err, 1e-6));

  double first_law = 0.0, control = INFINITY, flipped = 0.0;
  for (int n = 0; n < 20; ++n) {
    const auto law = random_law(rng);
    const bundle::MediaConnectionForm w(rng.mat(-0.5, 0.5));
    const double T0 = rng.uniform(0.5, 2.0), rho0 = rng.uniform(0.5, 2.0);
    const double fa = rng.uniform(0.5, 3.0), fb = rng.uniform(0.5, 3.0), ph = rng.uniform(0.0, 6.0);
    const MixedTensor d0 = random_tensor(rng), d1 = random_tensor(rng), d2 = random_tensor(rng);
    thermo::ThermoPath path{[=](double t) { return T0 * (1.0 + 0.3 * std::sin(fa * t + ph)); },
                            [=](double t) { return rho0 * (1.0 + 0.2 * std::cos(fb * t)); },
                            [=](double t) { return d0 + t * d1 + (t * t) * d2; }};
    first_law = std::max(first_law, thermo::first_law_residual(law, w, path, 100, 1e-4));
    flipped = std::max(flipped, thermo::first_law_residual(law, w, path, 100, 1e-4, MixedTensor(), -1.0));
    control = std::min(control,
                       thermo::first_law_residual(law, w, path, 100, 1e-4, 0.1 * bundle::vertical_projector(w)));
  }
  r.checks.push_back(at_most(suite, "first-law residual, 20 random paths, step 1e-4", first_law, 1e-6));
  r.checks.push_back(at_least(suite, "negative control (sigma + 0.1 Pi_V) residual", control, 1e-3));
  r.checks.push_back(info(suite, "first-law residual with s = -h_T instead", flipped));
  r.seconds = clock.seconds();
  return r;
}

/// Smooth analytic temperature and density fields on the bundle chart.
struct AnalyticThermoFields {
  oracle::BundleScalar T = [](const Vec3& x, const Vec3& y) {
    return 1.2 + 0.2 * std::sin(x[0] + 2.0 * x[1] - x[2]) + 0.1 * std::cos(y[0] - y[1] + 0.5 * y[2]);
  };
  oracle::BundleScalar rho = [](const Vec3& x, const Vec3& y) {
    return 1.0 + 0.3 * std::sin(2.0 * x[0] - x[2]) * std::cos(y[1]) + 0.2 * std::sin(y[0] + y[2]) + 0.1 * x[1];
  };
};

/// Value, x-gradient and frame derivatives from second-order central differences of step h.
inline thermo::ScalarJet stencil_jet(const oracle::BundleScalar& f, const Vec3& x, const Vec3& y, double h) {
  thermo::ScalarJet j;
  j.value = f(x, y);
  Vec3 gy;
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    j.dx[k] = (f(x + e, y) - f(x - e, y)) / (2.0 * h);
    gy[k] = (f(x, y + e) - f(x, y - e)) / (2.0 * h);
  }
  j.dE = so3::left_invariant_frame(y).matrix.transpose() * gy;
  return j;
}

/// div sigma and its g^mu raise against brute-force term-by-term divergence and a dense inverse.
inline CriterionReport criterion_stress_divergence(std::uint64_t seed = 6) {
  Stopwatch clock;
  CriterionReport r{4, "Stress divergence", {}, 0.0};
  oracle::Sampler rng(seed);
  const std::string suite = "thermo";
  const auto law = random_law(rng);
  const metric::InertiaSpectrum<double> lam(rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0));
  const bundle::MediaConnectionForm w(rng.mat(-0.5, 0.5));
  const AnalyticThermoFields fields;
  const std::array<double, 3> steps{4e-2, 2e-2, 1e-2};

  std::vector<double> div_err(3, 0.0), flat_err(3, 0.0);
  double raise_consistency = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Vec3 x = rng.vec(0.0, 1.0), y = rng.in_shell(0.0, 1.5);
    const auto stress = [&](const Vec3& xx, const Vec3& yy) {
      const auto p = law.evaluate(fields.T(xx, yy), fields.rho(xx, yy));
      return thermo::momentum_stress(p.p1, p.p2, w).matrix();
    };
    const Vec6 ref = oracle::brute_divergence(stress, x, y);
    const Vec6 ref_flat = oracle::dense_raise({lam[0], lam[1], lam[2]}, w.matrix(), ref);
    for (int l = 0; l < 3; ++l) {
      const auto jets = thermo::pressure_jets(law, stencil_jet(fields.T, x, y, steps[l]),
                                              stencil_jet(fields.rho, x, y, steps[l]));
      div_err[l] = std::max(div_err[l], (thermo::div_stress(jets, w) - ref).cwiseAbs().maxCoeff());
      flat_err[l] = std::max(flat_err[l], (thermo::div_flat_stress(lam, jets, w) - ref_flat).cwiseAbs().maxCoeff());
    }
    if (n < 20) {
      const auto jets = thermo::pressure_jets(law, stencil_jet(fields.T, x, y, 1e-3), stencil_jet(fields.rho, x, y, 1e-3));
      const Vec6 flat = thermo::div_flat_stress(lam, jets, w), cov = thermo::div_stress(jets, w);
      Vec6 v;
      for (int a = 0; a < 6; ++a) v[a] = rng.uniform(-1.0, 1.0);
      raise_consistency = std::max(raise_consistency, std::abs(bundle::metric_mu(lam, w, flat, v) - cov.dot(v)));
    }
  }
  r.checks.push_back(at_most(suite, "div sigma vs brute-force oracle at h=1e-2, 100 points", div_err[2], 1e-3));
  r.checks.push_back(at_least(suite, "div sigma observed order (h=4e-2, 2e-2, 1e-2)", min_order(div_err), 1.9));
  r.checks.push_back(at_most(suite, "div-flat sigma vs dense-inverse oracle at h=1e-2", flat_err[2], 1e-3));
  r.checks.push_back(at_least(suite, "div-flat sigma observed order", min_order(flat_err), 1.9));
  r.checks.push_back(at_most(suite, "raising consistency g(div-flat, V) = div(V), 20 vectors", raise_consistency, 1e-12));
  r.seconds = clock.seconds();
  return r;
}

/// Remaining thermo properties: epsilon-h consistency, trace insensitivity, vanishing vertical
/// force for fiber-independent fields, Leibniz identity, temperature recovery.
inline std::vector<Check> thermo_extra_checks(std::uint64_t seed = 7) {
  std::vector<Check> out;
  oracle::Sampler rng(seed);
  double eps_h = 0.0, insens = 0.0, recover = 0.0;
  for (int n = 0; n < 50; ++n) {
    const auto law = random_law(rng);
    const double T = rng.uniform(0.5, 2.0), rho = rng.uniform(0.5, 2.0);
    MixedTensor delta = random_tensor(rng);
    const auto st = thermo::state_equations(law, T, rho, delta);
    eps_h = std::max(eps_h, std::abs(st.epsilon - (st.h - T * st.s)));
    eps_h = std::max(eps_h, std::abs(st.epsilon - thermo::energy_density(law, T, rho, delta)));
    MixedTensor pert = delta;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        if (a != b) pert(a, b) += rng.uniform(-1.0, 1.0);
    const auto sp = thermo::state_equations(law, T, rho, pert);
    insens = std::max({insens, std::abs(sp.h - st.h), std::abs(sp.s - st.s), std::abs(sp.xi - st.xi),
                       std::abs(sp.epsilon - st.epsilon)});
    const double tr = bundle::trace_full(delta), trv = bundle::trace_vertical(delta);
    const double eps = thermo::energy_density_from_traces(law, T, rho, tr, trv);
    try {
      recover = std::max(recover, std::abs(thermo::recover_temperature(law, rho, tr, trv, eps) - T) / T);
    } catch (const Error&) {
      recover = INFINITY;
    }
  }
  out.push_back(at_most("thermo", "epsilon = h - T h_T", eps_h, 1e-12));
  out.push_back(at_most("thermo", "trace insensitivity (omega = 0)", insens, 1e-12));
  out.push_back(at_most("thermo", "temperature recovery relative error", recover, 1e-10));

  const auto law = random_law(rng);
  const bundle::MediaConnectionForm w(rng.mat(-0.5, 0.5));
  double vertical = 0.0, leibniz = 0.0;
  for (int n = 0; n < 20; ++n) {
    const Vec3 x = rng.vec(0.0, 1.0), y = rng.in_shell(0.0, 1.5);
    const oracle::BundleScalar Tx = [](const Vec3& xx, const Vec3&) { return 1.0 + 0.3 * std::sin(xx[0] + xx[2]); };
    const oracle::BundleScalar rx = [](const Vec3& xx, const Vec3&) { return 1.0 + 0.2 * std::cos(xx[1]); };
    const auto jets = thermo::pressure_jets(law, stencil_jet(Tx, x, y, 1e-2), stencil_jet(rx, x, y, 1e-2));
    vertical = std::max(vertical, thermo::div_stress(jets, w).segment<3>(kVertical).cwiseAbs().maxCoeff());

    // div(f V (x) a) = V(f) a for constant-coefficient V and a
    Vec6 V, a;
    for (int k = 0; k < 6; ++k) {
      V[k] = rng.uniform(-1.0, 1.0);
      a[k] = rng.uniform(-1.0, 1.0);
    }
    const oracle::BundleScalar f = [](const Vec3& xx, const Vec3& yy) {
      return std::sin(xx[0] - 2.0 * xx[1]) * std::cos(yy[0] + yy[1] - yy[2]);
    };
    const auto S = [&](const Vec3& xx, const Vec3& yy) -> Mat6 { return f(xx, yy) * V * a.transpose(); };
    const auto [gx, gy] = oracle::gradient4(f, x, y);
    const double Vf = V.head<3>().dot(gx) + V.tail<3>().dot(so3::left_invariant_frame(y).matrix.transpose() * gy);
    leibniz = std::max(leibniz, (oracle::brute_divergence(S, x, y) - Vf * a).cwiseAbs().maxCoeff());
  }
  out.push_back(at_most("thermo", "Omega components of div sigma vanish for fiber-independent fields", vertical, 0.0));
  out.push_back(at_most("thermo", "div(f V (x) a) = V(f) a", leibniz, 1e-9));
  return out;
}

}  // namespace cosserat::verify
