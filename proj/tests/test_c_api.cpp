// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "gkq/gkq.h"

namespace {

gkq_config quick_config() {
  gkq_config c;
  gkq_config_default(&c);
  c.samples = 4;
  c.seed = 7;
  return c;
}

}  // namespace

TEST(CApi, ScenarioListing) {
  ASSERT_GE(gkq_scenario_count(), 8u);
  EXPECT_STREQ(gkq_scenario_name(0), "S1");
  EXPECT_EQ(gkq_scenario_name(1000), nullptr);
}

TEST(CApi, UnknownScenario) {
  gkq_scenario* s = nullptr;
  EXPECT_EQ(gkq_scenario_create("nope", &s), GKQ_ERR_UNKNOWN_SCENARIO);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::strlen(gkq_last_error()), 0u);
  EXPECT_EQ(gkq_scenario_create(nullptr, &s), GKQ_ERR_NULL_ARGUMENT);
  EXPECT_EQ(gkq_scenario_create("S1", nullptr), GKQ_ERR_NULL_ARGUMENT);
}

TEST(CApi, RunAndInspect) {
  gkq_scenario* s = nullptr;
  ASSERT_EQ(gkq_scenario_create("S1", &s), GKQ_OK);
  EXPECT_NE(std::strlen(gkq_scenario_description(s)), 0u);
  gkq_config c = quick_config();
  gkq_report* r = nullptr;
  ASSERT_EQ(gkq_run(s, &c, &r), GKQ_OK) << gkq_last_error();
  EXPECT_EQ(gkq_report_pass(r), 1);
  EXPECT_EQ(gkq_report_point_count(r), 4u);
  EXPECT_GE(gkq_report_wall_seconds(r), 0.0);
  const size_t n = gkq_report_check_count(r);
  ASSERT_GT(n, 0u);
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    int pass = 0;
    double value = 0, threshold = 0;
    ASSERT_EQ(gkq_report_check(r, i, &name, &pass, &value, &threshold), GKQ_OK);
    EXPECT_NE(name, nullptr);
    EXPECT_EQ(pass, 1) << name;
  }
  EXPECT_EQ(gkq_report_check(r, n, nullptr, nullptr, nullptr, nullptr), GKQ_ERR_INVALID_INPUT);
  EXPECT_LT(gkq_report_aggregate(r, "J_omega.two_path_angle"), 1e-8);
  EXPECT_TRUE(std::isnan(gkq_report_aggregate(r, "no_such_residual")));
  std::string json = gkq_report_json(r);
  EXPECT_NE(json.find("\"scenario\": \"S1\""), std::string::npos);
  EXPECT_NE(std::string(gkq_report_summary(r, 0)).find("PASS"), std::string::npos);

  const std::string path = ::testing::TempDir() + "gkq_c_api_report.json";
  ASSERT_EQ(gkq_report_write(r, path.c_str()), GKQ_OK);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  EXPECT_EQ(buf.str().substr(0, json.size()), json);
  std::remove(path.c_str());
  gkq_report_destroy(r);
  gkq_scenario_destroy(s);
}

TEST(CApi, InvalidConfig) {
  gkq_scenario* s = nullptr;
  ASSERT_EQ(gkq_scenario_create("S2", &s), GKQ_OK);
  gkq_config c = quick_config();
  c.samples = -1;
  gkq_report* r = nullptr;
  EXPECT_EQ(gkq_run(s, &c, &r), GKQ_ERR_INVALID_INPUT);
  EXPECT_EQ(r, nullptr);
  EXPECT_EQ(gkq_run(s, nullptr, &r), GKQ_ERR_NULL_ARGUMENT);
  gkq_scenario_destroy(s);
}

TEST(CApi, ConfigFile) {
  const std::string path = ::testing::TempDir() + "gkq_c_api_config.json";
  {
    std::ofstream f(path);
    f << R"({"samples": 11, "variant": "trivial"})";
  }
  gkq_config c;
  gkq_config_default(&c);
  ASSERT_EQ(gkq_config_load(path.c_str(), &c), GKQ_OK);
  EXPECT_EQ(c.samples, 11);
  EXPECT_STREQ(c.variant, "trivial");
  std::remove(path.c_str());
  EXPECT_EQ(gkq_config_load(path.c_str(), &c), GKQ_ERR_IO);
}

TEST(CApi, Axioms) {
  gkq_axiom_report* a = nullptr;
  ASSERT_EQ(gkq_axioms_run(3, "closed", 20, &a), GKQ_OK);
  EXPECT_EQ(gkq_axiom_report_pass(a), 1);
  for (int i = 0; i < 5; ++i) EXPECT_LT(gkq_axiom_report_value(a, i), 1e-8);
  gkq_axiom_report_destroy(a);
  ASSERT_EQ(gkq_axioms_run(3, "nonclosed", 20, &a), GKQ_OK);
  EXPECT_EQ(gkq_axiom_report_pass(a), 0);
  EXPECT_GT(gkq_axiom_report_value(a, 0), 1e-3);
  gkq_axiom_report_destroy(a);
  EXPECT_EQ(gkq_axioms_run(3, "warped", 20, &a), GKQ_ERR_INVALID_INPUT);
}

TEST(CApi, StatusStrings) {
  EXPECT_STREQ(gkq_status_string(GKQ_OK), "ok");
  EXPECT_NE(std::strlen(gkq_status_string(GKQ_ERR_DEGENERATE)), 0u);
}
