#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cosserat/io/scenario.hpp"

using namespace cosserat;
using namespace cosserat::io;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("cosserat_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const fs::path& p, std::size_t n = 1000) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; out.size() < n && std::getline(in, l);) out.push_back(l);
  return out;
}

ScenarioConfig small_run() {
  ScenarioConfig c;
  c.name = "writer_probe";
  c.grid.x[0] = {8, 1.0, true};
  c.law.p1 = {-0.5, 0.0, 0.0};
  c.initial.kind = solver::InitialKind::SineX1;
  c.initial.amplitude = 0.1;
  c.dt = 0.01;
  c.t_end = 0.05;
  c.output.every = 2;
  return c;
}

}  // namespace

TEST(OutputDir, FlagBeatsEnvBeatsConfig) {
  ScenarioConfig c;
  c.output.dir = "from_config";
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(resolve_output_dir(std::nullopt, c), "from_config");
  ::setenv(kOutputDirEnv, "from_env", 1);
  EXPECT_EQ(resolve_output_dir(std::nullopt, c), "from_env");
  EXPECT_EQ(resolve_output_dir(std::string("from_flag"), c), "from_flag");
  ::unsetenv(kOutputDirEnv);
}

TEST(Writers, DiagnosticsMatchGoldenHeader) {
  const fs::path dir = fresh_dir("diag");
  const auto r = run_scenario(small_run(), dir);
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto produced = lines(dir / "diagnostics.csv");
  EXPECT_EQ(std::vector<std::string>(produced.begin(), produced.begin() + 2),
            lines(fs::path(COSSERAT_GOLDEN_DIR) / "diagnostics_header.csv", 2));
  // steps 0, 2, 4 and the final step 5
  EXPECT_EQ(produced.size(), 2u + 4u);
  fs::remove_all(dir);
}

TEST(Writers, CsvSnapshotMatchesGoldenHeader) {
  ScenarioConfig c = small_run();
  c.output.snapshots = SnapshotFormat::Csv;
  const fs::path dir = fresh_dir("csv");
  ASSERT_EQ(run_scenario(c, dir).exit_code, kExitOk);
  EXPECT_EQ(lines(dir / "snapshot_000000.csv", 3), lines(fs::path(COSSERAT_GOLDEN_DIR) / "snapshot_header.csv", 3));
  EXPECT_EQ(lines(dir / "snapshot_000005.csv").size(), 3u + 8u);
  EXPECT_TRUE(fs::exists(dir / "snapshot_000004.csv"));
  fs::remove_all(dir);
}

TEST(Writers, RawSnapshotLayout) {
  ScenarioConfig c = small_run();
  c.output.snapshots = SnapshotFormat::Raw;
  const fs::path dir = fresh_dir("raw");
  ASSERT_EQ(run_scenario(c, dir).exit_code, kExitOk);
  std::ifstream js(dir / "snapshot_000000.json");
  const auto j = nlohmann::json::parse(js);
  EXPECT_TRUE(j.contains("schema"));
  EXPECT_TRUE(j.contains("dtype"));
  ASSERT_TRUE(j.contains("fields"));
  EXPECT_EQ(j["fields"].size(), 8u);
  // 3 x-grid arrays and 5 bundle arrays of 8 doubles each
  EXPECT_EQ(fs::file_size(dir / "snapshot_000000.bin"), 8u * 8u * 8u);
  fs::remove_all(dir);
}

TEST(Writers, SummaryKeysAndOkStatus) {
  const fs::path dir = fresh_dir("summary");
  ASSERT_EQ(run_scenario(small_run(), dir).exit_code, kExitOk);
  std::ifstream in(dir / "summary.json");
  const auto j = nlohmann::ordered_json::parse(in);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::vector<std::string> expected;
  for (const auto& l : lines(fs::path(COSSERAT_GOLDEN_DIR) / "summary_keys.txt"))
    if (!l.empty()) expected.push_back(l);
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["steps"], 5);
  EXPECT_TRUE(j["error"].is_null());
  fs::remove_all(dir);
}

TEST(Writers, AbortWritesErrorSummary) {
  ScenarioConfig c = small_run();
  c.law.p2 = {1.0, 0.0, 0.0};
  c.initial.amplitude = 0.5;
  c.t_end = 50.0;
  c.output.every = 1000;
  const fs::path dir = fresh_dir("abort");
  const auto r = run_scenario(c, dir);
  EXPECT_EQ(r.exit_code, kExitSolverAbort);
  std::ifstream in(dir / "summary.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["status"], "error");
  EXPECT_FALSE(j["error"]["kind"].get<std::string>().empty());
  EXPECT_EQ(j["error"]["steps_completed"], r.outcome.steps);
  fs::remove_all(dir);
}
