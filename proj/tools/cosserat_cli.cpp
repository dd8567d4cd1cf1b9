#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cosserat/builtin_scenarios.hpp"
#include "cosserat/io/config.hpp"
#include "cosserat/io/scenario.hpp"
#include "cosserat/verify/suite.hpp"

#ifndef COSSERAT_GOLDEN_DIR
#define COSSERAT_GOLDEN_DIR "tests/golden"
#endif

namespace {

using namespace cosserat;

// A path to a config file, or the name of a built-in scenario.
io::ScenarioConfig load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return io::parse_config(arg);
  if (auto text = builtin::find(arg)) return io::parse_config_text(*text);
  throw ParseError(0, "'" + arg + "' is neither a config file nor a built-in scenario");
}

void report_config_error(const Error& e) {
  std::cerr << "config error (" << e.kind() << "): " << e.what() << "\n";
  if (const auto* v = dynamic_cast<const ValidationError*>(&e))
    for (const auto& msg : v->violations()) std::cerr << "  - " << msg << "\n";
}

struct SimulateArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> christoffel, energy, trace_term;
};

int simulate(const SimulateArgs& a) {
  io::ScenarioConfig cfg;
  try {
    cfg = load(a.config);
    if (a.christoffel) cfg.christoffel = io::detail::christoffel_names().from_string(*a.christoffel);
    if (a.energy) cfg.energy = io::detail::energy_names().from_string(*a.energy);
    if (a.trace_term) cfg.trace_term = io::detail::trace_names().from_string(*a.trace_term);
    io::validate_config(cfg);
  } catch (const Error& e) {
    report_config_error(e);
    return io::kExitConfigError;
  }
  const std::string dir = io::resolve_output_dir(a.out, cfg);
  io::ScenarioResult r;
  try {
    r = io::run_scenario(cfg, dir);
  } catch (const Error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return io::kExitSolverAbort;
  }
  const auto& o = r.outcome;
  if (o.ok) {
    std::printf("%s: ok, %ld steps to t=%.6g in %.2f s -> %s\n", cfg.name.c_str(), o.steps, o.state.t,
                o.wall_seconds, dir.c_str());
  } else {
    std::fprintf(stderr, "%s: aborted after %ld steps at t=%.6g: %s: %s (summary in %s)\n", cfg.name.c_str(),
                 o.steps, o.state.t, o.error_kind.c_str(), o.error_message.c_str(), dir.c_str());
  }
  return r.exit_code;
}

int run_verify(const std::string& suite, bool json, const std::string& golden) {
  const auto reports = verify::run_suite(suite, golden);
  bool ok = true;
  if (json) {
    std::cout << verify::to_json(reports).dump(2) << "\n";
    for (const auto& r : reports) ok = ok && r.passed();
    return ok ? 0 : 1;
  }
  for (const auto& r : reports) {
    ok = ok && r.passed();
    if (r.id > 0)
      std::printf("criterion %d %s: %s (%.2f s)\n", r.id, r.title.c_str(), r.passed() ? "PASS" : "FAIL", r.seconds);
    else
      std::printf("%s: %s\n", r.title.c_str(), r.passed() ? "PASS" : "FAIL");
    for (const auto& c : r.checks) {
      if (c.relation.empty())
        std::printf("  [%s] %s: %s = %.6g\n", verify::to_string(c.status), c.suite.c_str(), c.property.c_str(), c.value);
      else
        std::printf("  [%s] %s: %s = %.6g (%s %.3g)\n", verify::to_string(c.status), c.suite.c_str(),
                    c.property.c_str(), c.value, c.relation.c_str(), c.threshold);
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler equations of Cosserat media on the SO(3) frame bundle"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "run a scenario (config file or built-in name)");
  s->add_option("config", sim.config, "config file or built-in scenario")->required();
  s->add_option("--out", sim.out, std::string("output directory (beats $") + io::kOutputDirEnv + " and output.dir)");
  s->add_option("--christoffel", sim.christoffel, "connection table")->check(CLI::IsMember({"paper", "koszul"}));
  s->add_option("--energy", sim.energy, "energy treatment")->check(CLI::IsMember({"iso", "evolved"}));
  s->add_option("--trace-term", sim.trace_term, "stress work term")->check(CLI::IsMember({"contraction", "paper"}));

  std::string suite = "all", golden = COSSERAT_GOLDEN_DIR;
  bool json = false;
  auto* v = app.add_subcommand("verify", "run the property and acceptance checks");
  v->add_option("--suite", suite, "so3|christoffel|bundle|thermo|solver|io|errata|all")
      ->check(CLI::IsMember(verify::suite_names()));
  v->add_flag("--json", json, "machine-readable rows on stdout");
  v->add_option("--golden", golden, "directory of golden header files");

  std::string scenario;
  bool list = false;
  auto* p = app.add_subcommand("print-config", "print the full canonical config of a scenario");
  p->add_option("scenario", scenario, "config file or built-in scenario");
  p->add_flag("--list", list, "list built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : io::kExitUsage;
  }

  if (s->parsed()) return simulate(sim);
  if (v->parsed()) {
    try {
      return run_verify(suite, json, golden);
    } catch (const Error& e) {
      std::cerr << "verify: " << e.what() << "\n";
      return io::kExitUsage;
    }
  }
  if (list) {
    for (const auto& b : builtin::kScenarios) std::cout << b.name << "\n";
    return 0;
  }
  if (scenario.empty()) {
    std::cerr << "print-config: a scenario name or config path is required (or --list)\n";
    return io::kExitUsage;
  }
  try {
    std::cout << io::emit_config(load(scenario));
  } catch (const Error& e) {
    report_config_error(e);
    return io::kExitConfigError;
  }
  return 0;
}
