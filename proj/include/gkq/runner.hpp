// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_RUNNER_HPP
#define GKQ_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gkq/reduction.hpp"
#include "gkq/scenarios.hpp"

namespace gkq {

struct RunConfig {
  int samples = 20;
  std::uint64_t seed = 0;
  Tolerances tol;
  double oracle_tol = 1e-6;
  double isotropy_tol = 1e-10;
  double morphism_tol = 1e-9;
  double orbit_tol = 1e-6;
  int jobs = 1;
  bool orbit_check = true;
  std::string variant;  // appended to the scenario name as "<name>-<variant>"
};

/// Reads a JSON object with any of the keys samples, seed, rank_tol,
/// angle_tol, level_tol, residual_tol, oracle_tol, jobs, variant on top of
/// `base`.
RunConfig load_config(const std::string& path, RunConfig base = {});
void validate(const RunConfig& config);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<", ">", "==", ...
};

struct RunReport {
  std::string scenario;
  std::string description;
  RunConfig config;
  std::vector<ReducedFiberReport> points;
  std::vector<NamedValue> aggregates;
  std::vector<Check> checks;
  bool pass = false;
  double wall_seconds = 0.0;  // not serialized

  const Check* find_check(const std::string& name) const;
  double aggregate(const std::string& name) const;
};

RunReport run(const Scenario& scenario, const RunConfig& config);

constexpr int kReportSchemaVersion = 1;

/// Machine-readable report (excludes wall time so reruns are byte-identical).
std::string to_json(const RunReport& report);
/// Human summary, one line per check.
std::string summary(const RunReport& report, bool verbose = false);

}  // namespace gkq

#endif  // GKQ_RUNNER_HPP
