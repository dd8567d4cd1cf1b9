#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cosserat/io/config.hpp"
#include "cosserat/io/scenario.hpp"
#include "cosserat/verify/checks.hpp"

namespace cosserat::verify {

namespace fs = std::filesystem;

namespace detail {

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<std::string> first_lines(const fs::path& p, int n) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (int(out.size()) < n && std::getline(in, line)) out.push_back(line);
  return out;
}

inline fs::path scratch_dir(const std::string& tag) {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("cosserat_" + tag + "_" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

/// Small bundle run with fiber dependence and csv snapshots.
inline io::ScenarioConfig determinism_config() {
  io::ScenarioConfig c;
  c.name = "determinism_probe";
  c.mode = solver::ScenarioMode::FullBundle;
  c.grid.x[0] = {8, 1.0, true};
  c.grid.ny = {4, 4, 4};
  c.grid.chart_radius = 0.8;
  c.law.p1 = {-0.4, 0.0, 0.0};
  c.law.p2 = {-0.2, 0.0, 0.0};
  c.omega(0, 1) = 0.3;
  c.initial.kind = solver::InitialKind::FiberBump;
  c.initial.Y = Vec3(0.05, 0.02, -0.01);
  c.initial.amplitude = 0.2;
  c.initial.velocity_amplitude = 0.05;
  c.dt = 2e-3;
  c.t_end = 0.04;
  c.output.every = 5;
  c.output.snapshots = io::SnapshotFormat::Csv;
  return c;
}

inline io::ScenarioConfig evolved_config() {
  io::ScenarioConfig c;
  c.name = "evolved_probe";
  c.mode = solver::ScenarioMode::ReducedXOnly;
  c.energy = solver::EnergyMode::Evolved;
  c.grid.x[0] = {15, 1.0, true};
  c.law.p1 = {0.0, -0.3, 0.2};
  c.law.p2 = {0.0, -0.2, 0.1};
  c.initial.kind = solver::InitialKind::SineX1;
  c.initial.T = 1.5;
  c.initial.amplitude = 0.1;
  c.initial.velocity_amplitude = 0.1;
  c.dt = 2e-3;
  c.t_end = 0.02;
  c.output.every = 5;
  c.output.snapshots = io::SnapshotFormat::Raw;
  return c;
}

inline nlohmann::json summary_without_clock(const fs::path& p) {
  nlohmann::json j = nlohmann::json::parse(slurp(p));
  j.erase("wall_seconds");
  return j;
}

}  // namespace detail

/// Two identical runs must write identical bytes; headers must match the golden files in golden_dir.
inline CriterionReport criterion_determinism(const fs::path& golden_dir) {
  Stopwatch clock;
  CriterionReport r{10, "Determinism and schema", {}, 0.0};
  const std::string suite = "io";
  const fs::path root = detail::scratch_dir("determinism");

  for (const auto& cfg : {detail::determinism_config(), detail::evolved_config()}) {
    const fs::path a = root / (cfg.name + "_a"), b = root / (cfg.name + "_b");
    const auto ra = io::run_scenario(cfg, a), rb = io::run_scenario(cfg, b);
    r.checks.push_back(exactly(suite, cfg.name + ": both runs exit 0", ra.exit_code == 0 && rb.exit_code == 0));
    std::size_t files = 0, differing = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      const auto ext = e.path().extension();
      if (ext != ".csv" && ext != ".bin" && ext != ".json") continue;
      if (e.path().filename() == "summary.json") continue;
      ++files;
      const fs::path other = b / e.path().filename();
      if (!fs::exists(other) || detail::slurp(e.path()) != detail::slurp(other)) ++differing;
    }
    r.checks.push_back(exactly(suite, cfg.name + ": output files byte-identical", files > 1 && differing == 0,
                               double(differing)));
    r.checks.push_back(exactly(suite, cfg.name + ": summaries identical apart from wall clock",
                               detail::summary_without_clock(a / "summary.json") ==
                                   detail::summary_without_clock(b / "summary.json")));
  }

  const fs::path probe = root / (detail::determinism_config().name + "_a");
  struct Golden {
    const char* file;
    fs::path produced;
    int lines;
  };
  const Golden goldens[] = {{"diagnostics_header.csv", probe / "diagnostics.csv", 2},
                            {"snapshot_header.csv", probe / "snapshot_000000.csv", 3}};
  for (const auto& g : goldens) {
    const fs::path ref = golden_dir / g.file;
    const bool present = fs::exists(ref);
    const bool same = present && detail::first_lines(ref, g.lines) == detail::first_lines(g.produced, g.lines);
    r.checks.push_back(exactly(suite, std::string("golden header ") + g.file, same));
  }
  {
    const fs::path ref = golden_dir / "summary_keys.txt";
    std::vector<std::string> expected, produced;
    std::ifstream in(ref);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) expected.push_back(line);
    const auto j = nlohmann::ordered_json::parse(detail::slurp(probe / "summary.json"));
    for (const auto& [k, v] : j.items()) produced.push_back(k);
    r.checks.push_back(exactly(suite, "golden summary.json key order", !expected.empty() && expected == produced));
  }
  {
    const fs::path sidecar = root / (detail::evolved_config().name + "_a") / "snapshot_000000.json";
    bool ok = fs::exists(sidecar);
    if (ok) {
      const auto j = nlohmann::json::parse(detail::slurp(sidecar));
      ok = j.contains("schema") && j.contains("fields") && j.contains("dtype");
    }
    r.checks.push_back(exactly(suite, "raw snapshot sidecar carries schema, fields and dtype", ok));
  }

  std::error_code ec;
  fs::remove_all(root, ec);
  r.seconds = clock.seconds();
  return r;
}

}  // namespace cosserat::verify
