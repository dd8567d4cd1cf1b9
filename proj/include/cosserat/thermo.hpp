#pragma once

// Thermodynamics of the Euler-case Cosserat medium.
//
// Gibbs free energy h = p1 Tr(Delta) + p2 Tr(Delta Pi_V); the state equations
// s = h_T, sigma = h_Delta, xi = h_rho follow analytically, with stress and
// deformation paired by Tr(sigma . Delta).

#include <cmath>
#include <functional>
#include <limits>

#include "cosserat/bundle.hpp"
#include "cosserat/errors.hpp"
#include "cosserat/mixed_tensor.hpp"

namespace cosserat::thermo {

using bundle::MediaConnectionForm;
using so3::Vec3;

/// p(T, rho) = a rho + b rho T + c rho T ln T
struct PressureCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double value(double T, double rho) const { return rho * (a + b * T + c * T * std::log(T)); }
  double partial_T(double T, double rho) const { return rho * (b + c * (std::log(T) + 1.0)); }
  double partial_rho(double T) const { return a + b * T + c * T * std::log(T); }
  /// p - T p_T = rho (a - c T)
  double energy_coefficient(double T, double rho) const { return rho * (a - c * T); }
  double energy_coefficient_T(double rho) const { return -rho * c; }
  bool operator==(const PressureCoefficients&) const = default;
};

struct PressureValues {
  double p1, p2;
  double p1_T, p2_T;
  double p1_rho, p2_rho;
};

inline void check_domain(double T, double rho) {
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("temperature must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("density must be positive");
}

struct PressureLaw {
  PressureCoefficients p1;
  PressureCoefficients p2;

  PressureValues evaluate(double T, double rho) const {
    check_domain(T, rho);
    return {p1.value(T, rho), p2.value(T, rho), p1.partial_T(T, rho), p2.partial_T(T, rho),
            p1.partial_rho(T), p2.partial_rho(T)};
  }
  bool operator==(const PressureLaw&) const = default;
};

/// sigma = p1 Id + p2 Pi_V
inline MixedTensor euler_stress(double p1, double p2, const MediaConnectionForm& w) {
  return p1 * MixedTensor::identity() + p2 * bundle::vertical_projector(w);
}

/// (p1 + p2) sum E_i (x) Omega_i + p2 Pi_H: the stress whose divergence drives
/// the momentum equations.
inline MixedTensor momentum_stress(double p1, double p2, const MediaConnectionForm& w) {
  MixedTensor s = p2 * bundle::horizontal_projector(w);
  s.vv() += (p1 + p2) * so3::Mat3::Identity();
  return s;
}

inline double gibbs_energy(const PressureLaw& law, double T, double rho, const MixedTensor& delta,
                           const MediaConnectionForm& w = {}) {
  const PressureValues p = law.evaluate(T, rho);
  return p.p1 * bundle::trace_full(delta) + p.p2 * bundle::trace_vertical(delta, w);
}

struct StateFunctions {
  double h = 0.0;        ///< Gibbs free energy density
  double s = 0.0;        ///< entropy density h_T
  double xi = 0.0;       ///< chemical potential h_rho
  double epsilon = 0.0;  ///< energy density h - T h_T
  double pressure = 0.0; ///< Tr(sigma* Delta) + xi rho - (epsilon - T s), diagnostic only
  MixedTensor sigma;     ///< h_Delta
};

inline StateFunctions state_equations(const PressureLaw& law, double T, double rho, const MixedTensor& delta,
                                      const MediaConnectionForm& w = {}) {
  const PressureValues p = law.evaluate(T, rho);
  const double tr = bundle::trace_full(delta);
  const double trv = bundle::trace_vertical(delta, w);
  StateFunctions out;
  out.h = p.p1 * tr + p.p2 * trv;
  out.s = p.p1_T * tr + p.p2_T * trv;
  out.xi = p.p1_rho * tr + p.p2_rho * trv;
  out.epsilon = out.h - T * out.s;
  out.sigma = euler_stress(p.p1, p.p2, w);
  out.pressure = stress_pairing(out.sigma, delta) + out.xi * rho - (out.epsilon - T * out.s);
  return out;
}

/// epsilon = (p1 - T p1_T) Tr(Delta) + (p2 - T p2_T) Tr(Delta Pi_V)
inline double energy_density(const PressureLaw& law, double T, double rho, const MixedTensor& delta,
                             const MediaConnectionForm& w = {}) {
  check_domain(T, rho);
  return law.p1.energy_coefficient(T, rho) * bundle::trace_full(delta) +
         law.p2.energy_coefficient(T, rho) * bundle::trace_vertical(delta, w);
}

/// Same as energy_density, from the two traces directly.
inline double energy_density_from_traces(const PressureLaw& law, double T, double rho, double tr, double trv) {
  check_domain(T, rho);
  return law.p1.energy_coefficient(T, rho) * tr + law.p2.energy_coefficient(T, rho) * trv;
}

struct TemperatureBracket {
  double lo = 1e-8;
  double hi = 1e8;
};

/// Solve energy_density(T) = epsilon for T at fixed rho and traces by bisection
/// followed by Newton polishing (tolerance 1e-12 relative).
inline double recover_temperature(const PressureLaw& law, double rho, double tr, double trv, double epsilon,
                                  TemperatureBracket bracket = {}) {
  auto f = [&](double T) { return energy_density_from_traces(law, T, rho, tr, trv) - epsilon; };
  auto df = [&](double) {
    return law.p1.energy_coefficient_T(rho) * tr + law.p2.energy_coefficient_T(rho) * trv;
  };
  const double slope = df(1.0);
  if (!(std::abs(slope) > 1e-300)) {
    throw TemperatureRecoveryFailed("energy density does not depend on temperature at this state");
  }
  double lo = bracket.lo, hi = bracket.hi;
  double flo = f(lo), fhi = f(hi);
  if (!(flo * fhi <= 0.0)) {
    throw TemperatureRecoveryFailed("energy density " + std::to_string(epsilon) +
                                    " is not attained for T in the admissible bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(lo)); ++it) {
    if (hi / lo > 4.0) {
      // geometric bisection across decades
      const double mid = std::sqrt(lo * hi);
      const double fm = f(mid);
      if ((fm <= 0.0) == (flo <= 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
      continue;
    }
    break;
  }
  double T = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double fT = f(T);
    if (fT == 0.0) break;
    double next = T - fT / df(T);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if ((f(next) <= 0.0) == (flo <= 0.0)) {
      lo = next;
    } else {
      hi = next;
    }
    const bool done = std::abs(next - T) <= 1e-12 * std::max(1.0, std::abs(T));
    T = next;
    if (done) break;
  }
  if (!(T > 0.0) || !std::isfinite(T)) throw TemperatureRecoveryFailed("temperature recovery diverged");
  return T;
}

/// Curve t in [0, 1] through (T, rho, Delta)-space.
struct ThermoPath {
  std::function<double(double)> T;
  std::function<double(double)> rho;
  std::function<MixedTensor(double)> delta;
};

/// Max over samples of |psi(path')| with psi = ds - T^-1 (d epsilon - Tr(sigma* d Delta) - xi d rho),
/// derivatives along the path by central differences. `sigma_offset` perturbs the stress
/// (negative controls); entropy_sign = -1 evaluates psi with s = -h_T instead of s = h_T.
inline double first_law_residual(const PressureLaw& law, const MediaConnectionForm& w, const ThermoPath& path,
                                 int samples = 100, double step = 1e-4, const MixedTensor& sigma_offset = {},
                                 double entropy_sign = 1.0) {
  double worst = 0.0;
  for (int n = 0; n < samples; ++n) {
    const double t = step + (1.0 - 2.0 * step) * n / std::max(1, samples - 1);
    auto eval = [&](double tt) { return state_equations(law, path.T(tt), path.rho(tt), path.delta(tt), w); };
    const StateFunctions plus = eval(t + step), minus = eval(t - step), mid = eval(t);
    const double ds = entropy_sign * (plus.s - minus.s) / (2.0 * step);
    const double deps = (plus.epsilon - minus.epsilon) / (2.0 * step);
    const double drho = (path.rho(t + step) - path.rho(t - step)) / (2.0 * step);
    const MixedTensor ddelta = (path.delta(t + step) - path.delta(t - step)) * (1.0 / (2.0 * step));
    const MixedTensor sigma = mid.sigma + sigma_offset;
    const double psi = ds - (deps - stress_pairing(sigma, ddelta) - mid.xi * drho) / path.T(t);
    worst = std::max(worst, std::abs(psi));
  }
  return worst;
}

/// Value with bundle derivatives d_i f and E_i f at a point.
struct ScalarJet {
  double value = 0.0;
  Vec3 dx = Vec3::Zero();
  Vec3 dE = Vec3::Zero();
};

struct PressureJets {
  ScalarJet p1;
  ScalarJet p2;
};

/// Chain rule through the pressure law.
inline PressureJets pressure_jets(const PressureLaw& law, const ScalarJet& T, const ScalarJet& rho) {
  const PressureValues p = law.evaluate(T.value, rho.value);
  PressureJets j;
  j.p1 = {p.p1, p.p1_T * T.dx + p.p1_rho * rho.dx, p.p1_T * T.dE + p.p1_rho * rho.dE};
  j.p2 = {p.p2, p.p2_T * T.dx + p.p2_rho * rho.dx, p.p2_T * T.dE + p.p2_rho * rho.dE};
  return j;
}

/// div sigma = sum E_i(p1 + p2) Omega_i + (d_i - sum_j omega_ji E_j)(p2) d_i, as (d, Omega) components.
inline Vec6 div_stress(const PressureJets& p, const MediaConnectionForm& w) {
  Vec6 out;
  out.segment<3>(kHorizontal) = p.p2.dx - w.matrix().transpose() * p.p2.dE;
  out.segment<3>(kVertical) = p.p1.dE + p.p2.dE;
  return out;
}

/// Exact g^mu raise of div sigma.
inline Vec6 div_flat_stress(const metric::InertiaSpectrum<double>& lam, const PressureJets& p,
                            const MediaConnectionForm& w) {
  return bundle::raise(lam, w, div_stress(p, w));
}

/// Componentwise raise as written: vertical components divided by lambda_i,
/// horizontal components unchanged. Agrees with div_flat_stress when omega = 0.
inline Vec6 div_flat_stress_printed(const metric::InertiaSpectrum<double>& lam, const PressureJets& p,
                                    const MediaConnectionForm& w) {
  Vec6 v = div_stress(p, w);
  for (int i = 0; i < 3; ++i) v[kVertical + i] /= lam[i];
  return v;
}

}  // namespace cosserat::thermo
