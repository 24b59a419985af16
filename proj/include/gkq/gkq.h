/* SPDX-License-Identifier: Apache-2.0 */
#ifndef GKQ_GKQ_H
#define GKQ_GKQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(GKQ_BUILDING_LIBRARY)
#define GKQ_API __attribute__((visibility("default")))
#else
#define GKQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gkq_status {
  GKQ_OK = 0,
  GKQ_ERR_NULL_ARGUMENT = 1,
  GKQ_ERR_DIMENSION_MISMATCH = 2,
  GKQ_ERR_INVALID_INPUT = 3,
  GKQ_ERR_NOT_INVARIANT = 4,
  GKQ_ERR_DEGENERATE = 5,
  GKQ_ERR_NO_CONVERGENCE = 6,
  GKQ_ERR_SINGULAR_LEVEL = 7,
  GKQ_ERR_EIGEN_FAILURE = 8,
  GKQ_ERR_EVALUATION_FAILURE = 9,
  GKQ_ERR_CONDITION_FAILURE = 10,
  GKQ_ERR_UNKNOWN_SCENARIO = 11,
  GKQ_ERR_IO = 12,
  GKQ_ERR_INTERNAL = 99
} gkq_status;

typedef struct gkq_scenario gkq_scenario;
typedef struct gkq_report gkq_report;
typedef struct gkq_axiom_report gkq_axiom_report;

typedef struct gkq_config {
  int samples;
  uint64_t seed;
  double rank_tol;
  double angle_tol;
  double level_tol;
  double residual_tol;
  double oracle_tol;
  int jobs;
  char variant[32];
} gkq_config;

/* Message of the last failed call on this thread. */
GKQ_API const char* gkq_last_error(void);
GKQ_API const char* gkq_status_string(gkq_status status);

GKQ_API void gkq_config_default(gkq_config* config);
/* Overlays the keys of a JSON config file onto `config`. */
GKQ_API gkq_status gkq_config_load(const char* path, gkq_config* config);

GKQ_API size_t gkq_scenario_count(void);
GKQ_API const char* gkq_scenario_name(size_t index);
GKQ_API gkq_status gkq_scenario_create(const char* name, gkq_scenario** out);
GKQ_API const char* gkq_scenario_description(const gkq_scenario* scenario);
GKQ_API void gkq_scenario_destroy(gkq_scenario* scenario);

GKQ_API gkq_status gkq_run(const gkq_scenario* scenario, const gkq_config* config, gkq_report** out);
GKQ_API int gkq_report_pass(const gkq_report* report);
GKQ_API double gkq_report_wall_seconds(const gkq_report* report);
GKQ_API size_t gkq_report_point_count(const gkq_report* report);
GKQ_API size_t gkq_report_check_count(const gkq_report* report);
GKQ_API gkq_status gkq_report_check(const gkq_report* report, size_t index, const char** name, int* pass,
                                    double* value, double* threshold);
/* Aggregate maximum of a named residual; NaN when absent. */
GKQ_API double gkq_report_aggregate(const gkq_report* report, const char* name);
/* Strings are owned by the report. */
GKQ_API const char* gkq_report_json(const gkq_report* report);
GKQ_API const char* gkq_report_summary(const gkq_report* report, int verbose);
GKQ_API gkq_status gkq_report_write(const gkq_report* report, const char* path);
GKQ_API void gkq_report_destroy(gkq_report* report);

/* twist: "closed", "nonclosed" or "zero". */
GKQ_API gkq_status gkq_axioms_run(uint64_t seed, const char* twist, int samples, gkq_axiom_report** out);
GKQ_API int gkq_axiom_report_pass(const gkq_axiom_report* report);
/* index 0..4: C1..C5; 5: curvature; 6: B-transform; 7: closed kernel; 8: open kernel. */
GKQ_API double gkq_axiom_report_value(const gkq_axiom_report* report, int index);
GKQ_API const char* gkq_axiom_report_summary(const gkq_axiom_report* report);
GKQ_API void gkq_axiom_report_destroy(gkq_axiom_report* report);

#ifdef __cplusplus
}
#endif

#endif /* GKQ_GKQ_H */
