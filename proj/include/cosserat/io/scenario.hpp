#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "cosserat/io/config.hpp"
#include "cosserat/io/writers.hpp"
#include "cosserat/solver/run.hpp"

namespace cosserat::io {

inline constexpr const char* kOutputDirEnv = "COSSERAT_OUTPUT_DIR";

enum ExitCode : int { kExitOk = 0, kExitSolverAbort = 1, kExitConfigError = 2, kExitUsage = 3 };

/// Flag beats environment beats config.
inline std::string resolve_output_dir(const std::optional<std::string>& flag, const ScenarioConfig& c) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return c.output.dir;
}

struct ScenarioResult {
  int exit_code = kExitOk;
  solver::RunOutcome outcome;
  std::optional<solver::DiagnosticRecord> last;
};

/// Runs a validated config, writing diagnostics.csv, optional snapshots and summary.json into out_dir.
inline ScenarioResult run_scenario(const ScenarioConfig& c, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  ScenarioResult result;
  nlohmann::ordered_json summary;
  summary["scenario"] = c.name;
  summary["mode"] = detail::mode_names().to_string(c.mode);
  summary["energy"] = detail::energy_names().to_string(c.energy);
  summary["christoffel"] = detail::christoffel_names().to_string(c.christoffel);
  summary["trace_term"] = detail::trace_names().to_string(c.trace_term);

  std::optional<solver::EulerSystem> sys;
  solver::SimState initial;
  std::string setup_kind, setup_message;
  try {
    sys.emplace(system_of(c));
    initial = solver::make_initial_state(*sys, c.initial);
  } catch (const Error& e) {
    setup_kind = e.kind();
    setup_message = e.what();
  }

  if (sys && setup_kind.empty()) {
    DiagnosticsWriter diag(out_dir / "diagnostics.csv");
    const solver::RunSettings settings{c.dt, c.t_end, c.output.every};
    auto observer = [&](long step, const solver::SimState& s) {
      const solver::DiagnosticRecord r = solver::diagnostics(*sys, s, step, c.dt);
      diag.write(r);
      result.last = r;
      if (c.output.snapshots == SnapshotFormat::Csv) {
        write_snapshot_csv(out_dir / (snapshot_stem(step) + ".csv"), sys->grid(), s, step);
      } else if (c.output.snapshots == SnapshotFormat::Raw) {
        write_snapshot_raw(out_dir / snapshot_stem(step), sys->grid(), s, step);
      }
    };
    result.outcome = solver::integrate(*sys, std::move(initial), settings, observer);
  } else {
    result.outcome.ok = false;
    result.outcome.error_kind = setup_kind;
    result.outcome.error_message = setup_message;
  }

  const auto& o = result.outcome;
  result.exit_code = o.ok ? kExitOk : kExitSolverAbort;
  summary["status"] = o.ok ? "ok" : "error";
  summary["steps"] = o.steps;
  summary["t_final"] = o.state.t;
  summary["wall_seconds"] = o.wall_seconds;
  summary["final_diagnostics"] = result.last ? to_json(*result.last) : nlohmann::ordered_json(nullptr);
  if (o.ok) {
    summary["error"] = nullptr;
  } else {
    summary["error"] = {{"kind", o.error_kind}, {"message", o.error_message}, {"steps_completed", o.steps},
                        {"t_last_valid", o.state.t}};
  }
  std::ofstream js(out_dir / "summary.json");
  js << summary.dump(2) << "\n";
  return result;
}

}  // namespace cosserat::io
