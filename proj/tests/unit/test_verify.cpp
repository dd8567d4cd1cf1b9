#include <gtest/gtest.h>

#include "cosserat/verify/suite.hpp"

using namespace cosserat;
using namespace cosserat::verify;

TEST(Checks, Relations) {
  EXPECT_EQ(at_most("s", "p", 1.0, 2.0).status, Status::Pass);
  EXPECT_EQ(at_most("s", "p", 3.0, 2.0).status, Status::Fail);
  EXPECT_EQ(at_most("s", "p", std::nan(""), 2.0).status, Status::Fail);
  EXPECT_EQ(at_least("s", "p", 3.0, 2.0).status, Status::Pass);
  EXPECT_EQ(exactly("s", "p", false).status, Status::Fail);
  EXPECT_EQ(info("s", "p", 5.0).status, Status::Info);
}

TEST(Checks, ObservedOrder) {
  EXPECT_NEAR(min_order({1.0, 0.25, 0.0625}), 2.0, 1e-12);
  EXPECT_NEAR(min_order({1.0, 0.25, 0.125}), 1.0, 1e-12);
}

TEST(Checks, ReportFailsOnAnyFailingRow) {
  CriterionReport r{1, "t", {at_most("s", "a", 0.0, 1.0), info("s", "b", 9.0)}, 0.0};
  EXPECT_TRUE(r.passed());
  r.checks.push_back(at_most("s", "c", 2.0, 1.0));
  EXPECT_FALSE(r.passed());
}

TEST(Suite, NamesAndUnknownSuite) {
  for (const char* n : {"so3", "christoffel", "bundle", "thermo", "solver", "io", "errata", "all"})
    EXPECT_TRUE(known_suite(n)) << n;
  EXPECT_FALSE(known_suite("nope"));
  EXPECT_THROW(run_suite("nope", COSSERAT_GOLDEN_DIR), Error);
  EXPECT_THROW(criterion(11, COSSERAT_GOLDEN_DIR), Error);
}

TEST(Suite, JsonRowShape) {
  const auto rows = to_json(std::vector<CriterionReport>{
      {0, "g", {at_most("so3", "round trip", 1e-13, 1e-10), info("errata", "row", 0.5)}, 0.0}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["suite"], "so3");
  EXPECT_EQ(rows[0]["status"], "pass");
  EXPECT_DOUBLE_EQ(rows[0]["threshold"].get<double>(), 1e-10);
  EXPECT_TRUE(rows[1]["threshold"].is_null());
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"suite", "property", "status", "value", "threshold"}));
}

TEST(Suite, BundlePropertiesPass) {
  for (const auto& c : bundle_checks()) EXPECT_NE(c.status, Status::Fail) << c.property << " = " << c.value;
}

TEST(Suite, ErrataRowsAreInformational) {
  const auto rows = errata_rows();
  ASSERT_FALSE(rows.empty());
  for (const auto& c : rows) EXPECT_EQ(c.status, Status::Info) << c.property;
}
