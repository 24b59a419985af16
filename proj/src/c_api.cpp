// SPDX-License-Identifier: Apache-2.0
#include "gkq/gkq.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "gkq/axioms_suite.hpp"
#include "gkq/runner.hpp"
#include "gkq/scenarios.hpp"

struct gkq_scenario {
  gkq::Scenario s;
};

struct gkq_report {
  gkq::RunReport r;
  std::string json;
  std::string text[2];
};

struct gkq_axiom_report {
  gkq::AxiomSuiteReport r;
  std::string text;
};

namespace {

thread_local std::string last_error;

gkq_status fail(gkq_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
gkq_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const gkq::Error& e) {
    return fail(static_cast<gkq_status>(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(GKQ_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GKQ_ERR_INTERNAL, "unknown error");
  }
}

gkq::RunConfig to_cpp(const gkq_config& c) {
  gkq::RunConfig r;
  r.samples = c.samples;
  r.seed = c.seed;
  r.tol.rank = c.rank_tol;
  r.tol.angle = c.angle_tol;
  r.tol.level = c.level_tol;
  r.tol.residual = c.residual_tol;
  r.oracle_tol = c.oracle_tol;
  r.jobs = c.jobs;
  r.variant = std::string(c.variant, strnlen(c.variant, sizeof(c.variant)));
  return r;
}

void from_cpp(const gkq::RunConfig& r, gkq_config& c) {
  c.samples = r.samples;
  c.seed = r.seed;
  c.rank_tol = r.tol.rank;
  c.angle_tol = r.tol.angle;
  c.level_tol = r.tol.level;
  c.residual_tol = r.tol.residual;
  c.oracle_tol = r.oracle_tol;
  c.jobs = r.jobs;
  std::memset(c.variant, 0, sizeof(c.variant));
  std::strncpy(c.variant, r.variant.c_str(), sizeof(c.variant) - 1);
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = gkq::builtin_names();
  return n;
}

}  // namespace

extern "C" {

const char* gkq_last_error(void) { return last_error.c_str(); }

const char* gkq_status_string(gkq_status s) {
  switch (s) {
    case GKQ_OK: return "ok";
    case GKQ_ERR_NULL_ARGUMENT: return "null argument";
    case GKQ_ERR_INTERNAL: return "internal error";
    default:
      if (s >= GKQ_ERR_DIMENSION_MISMATCH && s <= GKQ_ERR_IO) return gkq::to_string(static_cast<gkq::ErrorCode>(s));
      return "unknown status";
  }
}

void gkq_config_default(gkq_config* config) {
  if (config) from_cpp(gkq::RunConfig{}, *config);
}

gkq_status gkq_config_load(const char* path, gkq_config* config) {
  if (!path || !config) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    gkq::RunConfig r = gkq::load_config(path, to_cpp(*config));
    if (r.variant.size() >= sizeof(config->variant)) return fail(GKQ_ERR_INVALID_INPUT, "variant name too long");
    from_cpp(r, *config);
    return GKQ_OK;
  });
}

size_t gkq_scenario_count(void) { return names().size(); }

const char* gkq_scenario_name(size_t index) { return index < names().size() ? names()[index].c_str() : nullptr; }

gkq_status gkq_scenario_create(const char* name, gkq_scenario** out) {
  if (!name || !out) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new gkq_scenario{gkq::builtin(name)};
    return GKQ_OK;
  });
}

const char* gkq_scenario_description(const gkq_scenario* s) { return s ? s->s.description.c_str() : nullptr; }

void gkq_scenario_destroy(gkq_scenario* s) { delete s; }

gkq_status gkq_run(const gkq_scenario* s, const gkq_config* config, gkq_report** out) {
  if (!s || !config || !out) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    gkq::RunConfig c = to_cpp(*config);
    gkq::RunReport r;
    if (!c.variant.empty() && c.variant != "default") r = gkq::run(gkq::builtin(s->s.name + "-" + c.variant), c);
    else r = gkq::run(s->s, c);
    auto* rep = new gkq_report;
    rep->r = std::move(r);
    rep->json = gkq::to_json(rep->r);
    rep->text[0] = gkq::summary(rep->r, false);
    rep->text[1] = gkq::summary(rep->r, true);
    *out = rep;
    return GKQ_OK;
  });
}

int gkq_report_pass(const gkq_report* r) { return r && r->r.pass ? 1 : 0; }

double gkq_report_wall_seconds(const gkq_report* r) { return r ? r->r.wall_seconds : 0.0; }

size_t gkq_report_point_count(const gkq_report* r) { return r ? r->r.points.size() : 0; }

size_t gkq_report_check_count(const gkq_report* r) { return r ? r->r.checks.size() : 0; }

gkq_status gkq_report_check(const gkq_report* r, size_t index, const char** name, int* pass, double* value,
                            double* threshold) {
  if (!r) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  if (index >= r->r.checks.size()) return fail(GKQ_ERR_INVALID_INPUT, "check index out of range");
  const auto& c = r->r.checks[index];
  if (name) *name = c.name.c_str();
  if (pass) *pass = c.pass ? 1 : 0;
  if (value) *value = c.value;
  if (threshold) *threshold = c.threshold;
  return GKQ_OK;
}

double gkq_report_aggregate(const gkq_report* r, const char* name) {
  if (!r || !name) return std::nan("");
  for (const auto& a : r->r.aggregates)
    if (a.name == name) return a.value;
  return std::nan("");
}

const char* gkq_report_json(const gkq_report* r) { return r ? r->json.c_str() : nullptr; }

const char* gkq_report_summary(const gkq_report* r, int verbose) {
  return r ? r->text[verbose ? 1 : 0].c_str() : nullptr;
}

gkq_status gkq_report_write(const gkq_report* r, const char* path) {
  if (!r || !path) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(GKQ_ERR_IO, std::string("cannot write report to '") + path + "'");
  out << r->json;
  if (!out) return fail(GKQ_ERR_IO, std::string("write failed for '") + path + "'");
  return GKQ_OK;
}

void gkq_report_destroy(gkq_report* r) { delete r; }

gkq_status gkq_axioms_run(uint64_t seed, const char* twist, int samples, gkq_axiom_report** out) {
  if (!twist || !out) return fail(GKQ_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    gkq::AxiomSuiteConfig c;
    c.seed = seed;
    c.twist = gkq::parse_twist(twist);
    c.samples = samples;
    auto* rep = new gkq_axiom_report{gkq::run_axiom_suite(c), {}};
    rep->text = gkq::summary(rep->r);
    *out = rep;
    return GKQ_OK;
  });
}

int gkq_axiom_report_pass(const gkq_axiom_report* r) { return r && r->r.pass ? 1 : 0; }

double gkq_axiom_report_value(const gkq_axiom_report* r, int index) {
  if (!r) return std::nan("");
  if (index >= 0 && index < 5) return r->r.axioms[static_cast<std::size_t>(index)];
  switch (index) {
    case 5: return r->r.curvature;
    case 6: return r->r.b_transform;
    case 7: return r->r.closed_kernel;
    case 8: return r->r.open_kernel;
    default: return std::nan("");
  }
}

const char* gkq_axiom_report_summary(const gkq_axiom_report* r) { return r ? r->text.c_str() : nullptr; }

void gkq_axiom_report_destroy(gkq_axiom_report* r) { delete r; }

}  // extern "C"
