#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosserat/verify/bundle_checks.hpp"
#include "cosserat/verify/io_checks.hpp"
#include "cosserat/verify/kernel_checks.hpp"
#include "cosserat/verify/solver_checks.hpp"
#include "cosserat/verify/thermo_checks.hpp"

namespace cosserat::verify {

inline constexpr int kCriterionCount = 10;

inline CriterionReport criterion(int id, const std::filesystem::path& golden_dir) {
  switch (id) {
    case 1: return criterion_so3_kernel();
    case 2: return criterion_christoffel();
    case 3: return criterion_state_equations();
    case 4: return criterion_stress_divergence();
    case 5: return criterion_rigid_rotor();
    case 6: return criterion_classical_fluid();
    case 7: return criterion_mass_conservation();
    case 8: return criterion_mode_independence();
    case 9: return criterion_full_bundle_smoke();
    case 10: return criterion_determinism(golden_dir);
  }
  throw Error("no acceptance criterion " + std::to_string(id));
}

inline CriterionReport property_group(const std::string& title, std::vector<Check> checks) {
  Stopwatch clock;
  CriterionReport r{0, title, std::move(checks), 0.0};
  r.seconds = clock.seconds();
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"so3", "christoffel", "bundle", "thermo", "solver", "io", "errata", "all"};
  return names;
}

inline bool known_suite(const std::string& name) {
  for (const auto& n : suite_names())
    if (n == name) return true;
  return false;
}

inline std::vector<CriterionReport> run_suite(const std::string& name, const std::filesystem::path& golden_dir) {
  std::vector<CriterionReport> out;
  const bool all = name == "all";
  if (all || name == "so3") {
    out.push_back(criterion(1, golden_dir));
    out.push_back(property_group("so3 properties", so3_extra_checks()));
  }
  if (all || name == "christoffel") {
    out.push_back(criterion(2, golden_dir));
    out.push_back(property_group("christoffel properties", christoffel_extra_checks()));
  }
  if (all || name == "bundle") out.push_back(property_group("bundle properties", bundle_checks()));
  if (all || name == "thermo") {
    out.push_back(criterion(3, golden_dir));
    out.push_back(criterion(4, golden_dir));
    out.push_back(property_group("thermo properties", thermo_extra_checks()));
  }
  if (all || name == "solver")
    for (int id = 5; id <= 9; ++id) out.push_back(criterion(id, golden_dir));
  if (all || name == "io") out.push_back(criterion(10, golden_dir));
  if (all || name == "errata") out.push_back(property_group("errata", errata_rows()));
  if (out.empty()) throw Error("unknown suite '" + name + "'");
  return out;
}

inline nlohmann::ordered_json to_json(const Check& c) {
  nlohmann::ordered_json j;
  j["suite"] = c.suite;
  j["property"] = c.property;
  j["status"] = to_string(c.status);
  j["value"] = c.value;
  j["threshold"] = c.relation.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(c.threshold);
  return j;
}

inline nlohmann::ordered_json to_json(const std::vector<CriterionReport>& reports) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports)
    for (const auto& c : r.checks) rows.push_back(to_json(c));
  return rows;
}

}  // namespace cosserat::verify
