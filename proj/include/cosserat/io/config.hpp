#pragma once

// Flat "dotted.key = value" scenario files. '#' starts a comment.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/solver/initial.hpp"
#include "cosserat/solver/state.hpp"

namespace cosserat::io {

using solver::EnergyMode;
using solver::InitialKind;
using solver::ScenarioMode;
using solver::TraceTerm;

enum class SnapshotFormat { None, Csv, Raw };

struct OutputSettings {
  long every = 1;
  std::string dir = "out";
  SnapshotFormat snapshots = SnapshotFormat::None;
  bool operator==(const OutputSettings&) const = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ScenarioMode mode = ScenarioMode::ReducedXOnly;
  EnergyMode energy = EnergyMode::Isothermal;
  metric::ChristoffelMode christoffel = metric::ChristoffelMode::Koszul;
  TraceTerm trace_term = TraceTerm::Contraction;
  std::array<double, 3> lambda{1.0, 2.0, 3.0};
  so3::Mat3 omega = so3::Mat3::Zero();
  thermo::PressureLaw law;
  double zeta = 0.0;
  solver::GridSpec grid;
  solver::InitialCondition initial;
  double dt = 1e-3;
  double t_end = 1.0;
  OutputSettings output;

  bool operator==(const ScenarioConfig&) const = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected a number, got '" + s + "'");
  return v;
}

inline long parse_long(const std::string& s) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("expected an integer, got '" + s + "'");
  return v;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

template <class E>
struct EnumNames {
  std::vector<std::pair<E, std::string>> names;

  std::string to_string(E e) const {
    for (const auto& [v, n] : names)
      if (v == e) return n;
    return "?";
  }
  E from_string(const std::string& s) const {
    for (const auto& [v, n] : names)
      if (n == s) return v;
    std::string allowed;
    for (const auto& p : names) allowed += (allowed.empty() ? "" : "|") + p.second;
    throw std::invalid_argument("expected one of " + allowed + ", got '" + s + "'");
  }
};

inline const EnumNames<ScenarioMode>& mode_names() {
  static const EnumNames<ScenarioMode> n{{{ScenarioMode::RigidRotor, "rigid_rotor"},
                                          {ScenarioMode::ReducedXOnly, "reduced_x_only"},
                                          {ScenarioMode::FullBundle, "full_bundle"}}};
  return n;
}
inline const EnumNames<EnergyMode>& energy_names() {
  static const EnumNames<EnergyMode> n{{{EnergyMode::Isothermal, "iso"}, {EnergyMode::Evolved, "evolved"}}};
  return n;
}
inline const EnumNames<metric::ChristoffelMode>& christoffel_names() {
  static const EnumNames<metric::ChristoffelMode> n{
      {{metric::ChristoffelMode::PaperLiteral, "paper"}, {metric::ChristoffelMode::Koszul, "koszul"}}};
  return n;
}
inline const EnumNames<TraceTerm>& trace_names() {
  static const EnumNames<TraceTerm> n{{{TraceTerm::Contraction, "contraction"}, {TraceTerm::Paper, "paper"}}};
  return n;
}
inline const EnumNames<InitialKind>& initial_names() {
  static const EnumNames<InitialKind> n{{{InitialKind::Uniform, "uniform"},
                                         {InitialKind::SineX1, "sine_x1"},
                                         {InitialKind::FiberBump, "fiber_bump"}}};
  return n;
}
inline const EnumNames<SnapshotFormat>& snapshot_names() {
  static const EnumNames<SnapshotFormat> n{
      {{SnapshotFormat::None, "none"}, {SnapshotFormat::Csv, "csv"}, {SnapshotFormat::Raw, "raw"}}};
  return n;
}

struct Key {
  std::string name;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string&)> set;
};

inline Key real(std::string name, std::function<double&(ScenarioConfig&)> ref) {
  return {name, [ref](const ScenarioConfig& c) { return format_double(ref(const_cast<ScenarioConfig&>(c))); },
          [ref](ScenarioConfig& c, const std::string& v) { ref(c) = parse_double(v); }};
}
inline Key integer(std::string name, std::function<long(const ScenarioConfig&)> get,
                   std::function<void(ScenarioConfig&, long)> set) {
  return {name, [get](const ScenarioConfig& c) { return std::to_string(get(c)); },
          [set](ScenarioConfig& c, const std::string& v) { set(c, parse_long(v)); }};
}
template <class E>
Key enumerated(std::string name, const EnumNames<E>& names, std::function<E&(ScenarioConfig&)> ref) {
  return {name, [&names, ref](const ScenarioConfig& c) { return names.to_string(ref(const_cast<ScenarioConfig&>(c))); },
          [&names, ref](ScenarioConfig& c, const std::string& v) { ref(c) = names.from_string(v); }};
}

inline const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back({"name", [](const ScenarioConfig& c) { return c.name; },
                 [](ScenarioConfig& c, const std::string& v) {
                   if (v.empty()) throw std::invalid_argument("name must not be empty");
                   c.name = v;
                 }});
    k.push_back(enumerated<ScenarioMode>("mode", mode_names(), [](ScenarioConfig& c) -> ScenarioMode& { return c.mode; }));
    k.push_back(enumerated<EnergyMode>("energy", energy_names(), [](ScenarioConfig& c) -> EnergyMode& { return c.energy; }));
    k.push_back(enumerated<metric::ChristoffelMode>(
        "christoffel", christoffel_names(), [](ScenarioConfig& c) -> metric::ChristoffelMode& { return c.christoffel; }));
    k.push_back(enumerated<TraceTerm>("trace_term", trace_names(), [](ScenarioConfig& c) -> TraceTerm& { return c.trace_term; }));
    for (int i = 0; i < 3; ++i)
      k.push_back(real("inertia.lambda" + std::to_string(i + 1), [i](ScenarioConfig& c) -> double& { return c.lambda[i]; }));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        k.push_back(real("connection.omega" + std::to_string(i + 1) + std::to_string(j + 1),
                         [i, j](ScenarioConfig& c) -> double& { return c.omega(i, j); }));
    for (int p = 0; p < 2; ++p) {
      const std::string s = std::to_string(p + 1);
      auto coeff = [p](ScenarioConfig& c) -> thermo::PressureCoefficients& { return p == 0 ? c.law.p1 : c.law.p2; };
      k.push_back(real("pressure.a" + s, [coeff](ScenarioConfig& c) -> double& { return coeff(c).a; }));
      k.push_back(real("pressure.b" + s, [coeff](ScenarioConfig& c) -> double& { return coeff(c).b; }));
      k.push_back(real("pressure.c" + s, [coeff](ScenarioConfig& c) -> double& { return coeff(c).c; }));
    }
    k.push_back(real("thermal.zeta", [](ScenarioConfig& c) -> double& { return c.zeta; }));
    for (int a = 0; a < 3; ++a) {
      const std::string s = std::to_string(a + 1);
      k.push_back(integer("grid.nx" + s, [a](const ScenarioConfig& c) { return long(c.grid.x[a].n); },
                          [a](ScenarioConfig& c, long v) { c.grid.x[a].n = int(v); }));
      k.push_back(real("grid.lx" + s, [a](ScenarioConfig& c) -> double& { return c.grid.x[a].extent; }));
      k.push_back({"grid.periodic" + s, [a](const ScenarioConfig& c) { return std::string(c.grid.x[a].periodic ? "true" : "false"); },
                   [a](ScenarioConfig& c, const std::string& v) { c.grid.x[a].periodic = parse_bool(v); }});
      k.push_back(integer("grid.ny" + s, [a](const ScenarioConfig& c) { return long(c.grid.ny[a]); },
                          [a](ScenarioConfig& c, long v) { c.grid.ny[a] = int(v); }));
    }
    k.push_back(real("grid.chart_radius", [](ScenarioConfig& c) -> double& { return c.grid.chart_radius; }));
    k.push_back(integer("grid.stencil_order", [](const ScenarioConfig& c) { return long(c.grid.stencil_order); },
                        [](ScenarioConfig& c, long v) { c.grid.stencil_order = int(v); }));
    k.push_back(enumerated<InitialKind>("initial.kind", initial_names(),
                                        [](ScenarioConfig& c) -> InitialKind& { return c.initial.kind; }));
    for (int i = 0; i < 3; ++i)
      k.push_back(real("initial.X" + std::to_string(i + 1), [i](ScenarioConfig& c) -> double& { return c.initial.X[i]; }));
    for (int i = 0; i < 3; ++i)
      k.push_back(real("initial.Y" + std::to_string(i + 1), [i](ScenarioConfig& c) -> double& { return c.initial.Y[i]; }));
    k.push_back(real("initial.rho", [](ScenarioConfig& c) -> double& { return c.initial.rho; }));
    k.push_back(real("initial.T", [](ScenarioConfig& c) -> double& { return c.initial.T; }));
    k.push_back(real("initial.amplitude", [](ScenarioConfig& c) -> double& { return c.initial.amplitude; }));
    k.push_back(real("initial.velocity_amplitude",
                     [](ScenarioConfig& c) -> double& { return c.initial.velocity_amplitude; }));
    k.push_back(real("initial.width", [](ScenarioConfig& c) -> double& { return c.initial.width; }));
    k.push_back(integer("initial.wavenumber", [](const ScenarioConfig& c) { return long(c.initial.wavenumber); },
                        [](ScenarioConfig& c, long v) { c.initial.wavenumber = int(v); }));
    k.push_back(real("time.dt", [](ScenarioConfig& c) -> double& { return c.dt; }));
    k.push_back(real("time.t_end", [](ScenarioConfig& c) -> double& { return c.t_end; }));
    k.push_back(integer("output.every", [](const ScenarioConfig& c) { return c.output.every; },
                        [](ScenarioConfig& c, long v) { c.output.every = v; }));
    k.push_back({"output.dir", [](const ScenarioConfig& c) { return c.output.dir; },
                 [](ScenarioConfig& c, const std::string& v) { c.output.dir = v; }});
    k.push_back(enumerated<SnapshotFormat>("output.snapshots", snapshot_names(),
                                           [](ScenarioConfig& c) -> SnapshotFormat& { return c.output.snapshots; }));
    return k;
  }();
  return table;
}

}  // namespace detail

/// Every physical and structural violation, in key order.
inline std::vector<std::string> violations(const ScenarioConfig& c) {
  std::vector<std::string> v;
  for (int i = 0; i < 3; ++i)
    if (!(c.lambda[i] > 0.0) || !std::isfinite(c.lambda[i]))
      v.push_back("lambda" + std::to_string(i + 1) + " must be positive");
  if (!c.omega.allFinite()) v.push_back("connection coefficients must be finite");
  const double coeffs[6] = {c.law.p1.a, c.law.p1.b, c.law.p1.c, c.law.p2.a, c.law.p2.b, c.law.p2.c};
  for (double x : coeffs)
    if (!std::isfinite(x)) {
      v.push_back("pressure coefficients must be finite");
      break;
    }
  if (!(c.zeta >= 0.0) || !std::isfinite(c.zeta)) v.push_back("thermal.zeta must be >= 0");
  for (auto& e : solver::validate(c.grid)) v.push_back(e);
  for (auto& e : solver::validate_mode(c.grid, c.mode)) v.push_back(e);
  if (!(c.initial.rho > 0.0)) v.push_back("initial.rho must be positive");
  if (!(c.initial.T > 0.0)) v.push_back("initial.T must be positive");
  const double a = c.initial.amplitude;
  if (c.initial.kind == InitialKind::SineX1 && !(std::abs(a) < 1.0))
    v.push_back("initial.amplitude must have magnitude below 1 to keep the density positive");
  if (c.initial.kind == InitialKind::FiberBump && !(a > -2.0 / 3.0))
    v.push_back("initial.amplitude must exceed -2/3 to keep the density positive");
  if (c.initial.kind == InitialKind::FiberBump && !(c.initial.width > 0.0)) v.push_back("initial.width must be positive");
  if (c.initial.wavenumber < 0) v.push_back("initial.wavenumber must be >= 0");
  if (c.energy == EnergyMode::Evolved && c.law.p1.c == 0.0 && c.law.p2.c == 0.0)
    v.push_back("energy = evolved needs pressure.c1 or pressure.c2 nonzero (temperature is otherwise unrecoverable)");
  if (c.energy == EnergyMode::Evolved && c.mode == ScenarioMode::RigidRotor)
    v.push_back("energy = evolved is unavailable for rigid_rotor (the deformation traces vanish)");
  if (!(c.dt > 0.0)) v.push_back("time.dt must be positive");
  if (!(c.t_end >= 0.0)) v.push_back("time.t_end must be nonnegative");
  if (c.output.every < 1) v.push_back("output.every must be >= 1");
  return v;
}

inline void validate_config(const ScenarioConfig& c) {
  if (auto v = violations(c); !v.empty()) throw ValidationError(std::move(v));
}

/// Parses without validating.
inline ScenarioConfig parse_config_text_unchecked(const std::string& text) {
  ScenarioConfig c;
  std::map<std::string, const detail::Key*> index;
  for (const auto& k : detail::keys()) index[k.name] = &k;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const auto it = index.find(key);
    if (it == index.end()) throw ParseError(number, "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(number, "duplicate key '" + key + "'");
    try {
      it->second->set(c, value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, key + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw ParseError(number, key + ": value out of range");
    }
  }
  return c;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig c = parse_config_text_unchecked(text);
  validate_config(c);
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline ScenarioConfig parse_config(const std::string& path) { return parse_config_text(read_file(path)); }

/// Every key, one per line, in canonical order; parse_config_text(emit_config(c)) == c.
inline std::string emit_config(const ScenarioConfig& c) {
  std::string out;
  for (const auto& k : detail::keys()) out += k.name + " = " + k.get(c) + "\n";
  return out;
}

inline std::vector<std::string> config_keys() {
  std::vector<std::string> names;
  for (const auto& k : detail::keys()) names.push_back(k.name);
  return names;
}

inline solver::Physics physics_of(const ScenarioConfig& c) {
  solver::Physics p;
  p.lambda = metric::InertiaSpectrum<double>(c.lambda[0], c.lambda[1], c.lambda[2]);
  p.omega = bundle::MediaConnectionForm(c.omega);
  p.law = c.law;
  p.zeta = c.zeta;
  return p;
}

inline solver::ModelOptions options_of(const ScenarioConfig& c) {
  return {c.mode, c.energy, c.christoffel, c.trace_term};
}

inline solver::EulerSystem system_of(const ScenarioConfig& c) {
  return solver::EulerSystem(solver::BundleGrid(c.grid), physics_of(c), options_of(c));
}

}  // namespace cosserat::io
