#include <gtest/gtest.h>

#include "cosserat/builtin_scenarios.hpp"
#include "cosserat/io/config.hpp"

using namespace cosserat;
using so3::Mat3;
using so3::Vec3;
using namespace cosserat::io;

namespace {

template <class F>
std::vector<std::string> violations_of(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Config, DefaultsAreValid) { EXPECT_TRUE(violations(ScenarioConfig{}).empty()); }

TEST(Config, ParsesKeysCommentsAndBlankLines) {
  const auto c = parse_config_text(
      "# header\n"
      "name = demo\n"
      "\n"
      "mode = reduced_x_only   # trailing comment\n"
      "inertia.lambda2 = 2.5\n"
      "connection.omega12 = 1\n"
      "pressure.b2 = -0.25\n"
      "grid.nx1 = 32\n"
      "grid.periodic1 = false\n"
      "initial.kind = sine_x1\n"
      "output.snapshots = raw\n");
  EXPECT_EQ(c.name, "demo");
  EXPECT_DOUBLE_EQ(c.lambda[1], 2.5);
  EXPECT_DOUBLE_EQ(c.omega(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c.law.p2.b, -0.25);
  EXPECT_EQ(c.grid.x[0].n, 32);
  EXPECT_FALSE(c.grid.x[0].periodic);
  EXPECT_EQ(c.initial.kind, solver::InitialKind::SineX1);
  EXPECT_EQ(c.output.snapshots, SnapshotFormat::Raw);
}

TEST(Config, ParseErrorsCarryLineNumbers) {
  const auto line_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_EQ(line_of("name = a\nbogus.key = 1\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(line_of("\n\nmode\n").rfind("line 3:", 0), 0u);
  EXPECT_EQ(line_of("time.dt = fast\n").rfind("line 1:", 0), 0u);
  EXPECT_EQ(line_of("mode = sideways\n").rfind("line 1:", 0), 0u);
  EXPECT_EQ(line_of("grid.nx1 = 4\ngrid.nx1 = 8\n").rfind("line 2:", 0), 0u);
  EXPECT_EQ(line_of("grid.nx1 = 4.5\n").rfind("line 1:", 0), 0u);
}

TEST(Config, ValidationListsEveryViolation) {
  const auto v = violations_of([] {
    parse_config_text(
        "inertia.lambda2 = 0\n"
        "time.dt = -1\n"
        "thermal.zeta = -0.1\n"
        "output.every = 0\n");
  });
  EXPECT_TRUE(contains(v, "lambda2 must be positive"));
  EXPECT_TRUE(contains(v, "time.dt must be positive"));
  EXPECT_TRUE(contains(v, "thermal.zeta"));
  EXPECT_TRUE(contains(v, "output.every"));
  EXPECT_EQ(v.size(), 4u);
}

TEST(Config, ModeAndGridMustAgree) {
  ScenarioConfig c;
  c.mode = solver::ScenarioMode::FullBundle;
  EXPECT_TRUE(contains(violations(c), "full_bundle"));
  c.mode = solver::ScenarioMode::RigidRotor;
  c.grid.x[0].n = 4;
  EXPECT_TRUE(contains(violations(c), "rigid_rotor"));
}

TEST(Config, EvolvedNeedsTemperatureDependence) {
  ScenarioConfig c;
  c.energy = solver::EnergyMode::Evolved;
  EXPECT_TRUE(contains(violations(c), "pressure.c1 or pressure.c2"));
  c.law.p1.c = 0.1;
  EXPECT_TRUE(violations(c).empty());
  c.mode = solver::ScenarioMode::RigidRotor;
  EXPECT_TRUE(contains(violations(c), "unavailable for rigid_rotor"));
}

TEST(Config, EmitRoundTrips) {
  ScenarioConfig c;
  c.name = "round_trip";
  c.mode = solver::ScenarioMode::FullBundle;
  c.grid.ny = {4, 5, 1};
  c.grid.chart_radius = 0.7;
  c.lambda = {0.1, 1.0 / 3.0, 7.25};
  c.omega(2, 0) = -1e-17;
  c.law.p1 = {0.1, -0.2, 1.0 / 7.0};
  c.initial.kind = solver::InitialKind::FiberBump;
  c.initial.Y = Vec3(0.5, -0.25, 1e-300);
  c.output.dir = "some/where";
  c.output.snapshots = SnapshotFormat::Csv;
  const std::string text = emit_config(c);
  EXPECT_EQ(parse_config_text(text), c);
  EXPECT_EQ(emit_config(parse_config_text(text)), text);
}

TEST(Config, EmitListsEveryKeyOnce) {
  const std::string text = emit_config(ScenarioConfig{});
  for (const auto& k : config_keys()) {
    const auto at = text.find("\n" + k + " = ");
    const bool first = text.rfind(k + " = ", 0) == 0;
    EXPECT_TRUE(first || at != std::string::npos) << k;
  }
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), long(config_keys().size()));
}

TEST(Config, EnumNamesRejectUnknown) {
  EXPECT_EQ(detail::christoffel_names().from_string("paper"), metric::ChristoffelMode::PaperLiteral);
  EXPECT_EQ(detail::energy_names().from_string("evolved"), solver::EnergyMode::Evolved);
  EXPECT_EQ(detail::trace_names().from_string("paper"), solver::TraceTerm::Paper);
  EXPECT_THROW(detail::mode_names().from_string("fluid"), std::invalid_argument);
}

TEST(Config, ReadFileReportsMissing) { EXPECT_THROW(parse_config("/nonexistent/x.cfg"), ParseError); }

TEST(Scenarios, EveryBuiltinParsesAndBuilds) {
  ASSERT_GE(std::size(builtin::kScenarios), 5u);
  for (const auto& s : builtin::kScenarios) {
    SCOPED_TRACE(s.name);
    ScenarioConfig c;
    ASSERT_NO_THROW(c = parse_config_text(std::string(s.text)));
    EXPECT_EQ(c.name, std::string(s.name));
    EXPECT_NO_THROW(system_of(c));
  }
  EXPECT_TRUE(builtin::find("rigid_rotor_stable").has_value());
  EXPECT_FALSE(builtin::find("missing").has_value());
}
