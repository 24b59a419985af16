// SPDX-License-Identifier: Apache-2.0
// Command-line driver over the gkq C API.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gkq/gkq.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string default_report_path(const std::string& scenario) {
  const char* dir = std::getenv("GKQ_REPORT_DIR");
  std::filesystem::path base = dir && *dir ? dir : ".";
  return (base / (scenario + "_report.json")).string();
}

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

bool is_usage_status(gkq_status s) {
  return s == GKQ_ERR_UNKNOWN_SCENARIO || s == GKQ_ERR_INVALID_INPUT || s == GKQ_ERR_NULL_ARGUMENT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized geometry reduction laboratory"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List built-in scenarios");

  auto* run = app.add_subcommand("run", "Run a scenario and write its report");
  std::string scenario;
  int samples = 0;
  std::uint64_t seed = 0;
  double rank_tol = 0, angle_tol = 0, level_tol = 0, residual_tol = 0;
  std::string report_path, config_path;
  int jobs = 1;
  bool verbose = false, timing = false;
  run->add_option("scenario", scenario, "Scenario name (see `list`)")->required();
  auto* o_samples = run->add_option("--samples", samples, "Accepted level-set points")->check(CLI::PositiveNumber);
  auto* o_seed = run->add_option("--seed", seed, "Random seed");
  auto* o_rank = run->add_option("--rank-tol", rank_tol, "Relative rank cutoff")->check(CLI::PositiveNumber);
  auto* o_angle = run->add_option("--angle-tol", angle_tol, "Principal angle tolerance")->check(CLI::PositiveNumber);
  auto* o_level = run->add_option("--level-tol", level_tol, "Level-set residual tolerance")->check(CLI::PositiveNumber);
  auto* o_resid = run->add_option("--residual-tol", residual_tol, "Algebraic residual tolerance")
                      ->check(CLI::PositiveNumber);
  run->add_option("--report", report_path, "Report path (default $GKQ_REPORT_DIR/<scenario>_report.json)");
  run->add_option("--config", config_path, "JSON config file; flags override it");
  auto* o_jobs = run->add_option("--jobs", jobs, "Concurrent point evaluations")->check(CLI::PositiveNumber);
  run->add_flag("-v,--verbose", verbose, "Per-point errors and residual maxima");
  run->add_flag("--timing", timing, "Print wall time");

  auto* axioms = app.add_subcommand("axioms", "Courant axiom and bracket property suite");
  std::uint64_t ax_seed = 0;
  std::string twist = "closed";
  int ax_samples = 100;
  axioms->add_option("--seed", ax_seed, "Random seed");
  axioms->add_option("--twist", twist, "closed, nonclosed or zero")
      ->check(CLI::IsMember({"closed", "nonclosed", "zero"}));
  axioms->add_option("--samples", ax_samples, "Random sections and points")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (*list) {
    for (size_t i = 0; i < gkq_scenario_count(); ++i) {
      gkq_scenario* s = nullptr;
      if (gkq_scenario_create(gkq_scenario_name(i), &s) != GKQ_OK) continue;
      std::printf("%-11s %s\n", gkq_scenario_name(i), gkq_scenario_description(s));
      gkq_scenario_destroy(s);
    }
    return kExitPass;
  }

  if (*axioms) {
    gkq_axiom_report* rep = nullptr;
    gkq_status st = gkq_axioms_run(ax_seed, twist.c_str(), ax_samples, &rep);
    if (st != GKQ_OK) {
      std::cerr << "error: " << gkq_last_error() << "\n";
      return is_usage_status(st) ? kExitUsage : kExitFail;
    }
    std::fputs(gkq_axiom_report_summary(rep), stdout);
    int code = gkq_axiom_report_pass(rep) ? kExitPass : kExitFail;
    gkq_axiom_report_destroy(rep);
    return code;
  }

  gkq_config cfg;
  gkq_config_default(&cfg);
  if (!config_path.empty()) {
    gkq_status st = gkq_config_load(config_path.c_str(), &cfg);
    if (st != GKQ_OK) return usage_error(gkq_last_error());
  }
  if (o_samples->count()) cfg.samples = samples;
  if (o_seed->count()) cfg.seed = seed;
  if (o_rank->count()) cfg.rank_tol = rank_tol;
  if (o_angle->count()) cfg.angle_tol = angle_tol;
  if (o_level->count()) cfg.level_tol = level_tol;
  if (o_resid->count()) cfg.residual_tol = residual_tol;
  if (o_jobs->count()) cfg.jobs = jobs;

  gkq_scenario* sc = nullptr;
  gkq_status st = gkq_scenario_create(scenario.c_str(), &sc);
  if (st != GKQ_OK) {
    std::cerr << "error: " << gkq_last_error() << "\n" << run->help();
    return kExitUsage;
  }
  gkq_report* rep = nullptr;
  st = gkq_run(sc, &cfg, &rep);
  gkq_scenario_destroy(sc);
  if (st != GKQ_OK) {
    std::cerr << "error: " << gkq_last_error() << "\n";
    return is_usage_status(st) ? kExitUsage : kExitFail;
  }
  std::fputs(gkq_report_summary(rep, verbose ? 1 : 0), stdout);
  if (timing) std::printf("wall time: %.3f s\n", gkq_report_wall_seconds(rep));
  if (report_path.empty()) report_path = default_report_path(scenario);
  int code = gkq_report_pass(rep) ? kExitPass : kExitFail;
  if (gkq_report_write(rep, report_path.c_str()) != GKQ_OK) {
    std::cerr << "error: " << gkq_last_error() << "\n";
    code = kExitFail;
  } else {
    std::printf("report: %s\n", report_path.c_str());
  }
  gkq_report_destroy(rep);
  return code;
}
