#ifndef CRNFIR_H
#define CRNFIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(CRNFIR_BUILDING)
#define CRN_API __attribute__((visibility("default")))
#else
#define CRN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum crn_status {
  CRN_OK = 0,
  CRN_E_INVALID_ARGUMENT = 1,
  CRN_E_CONFIG = 2,
  CRN_E_INFEASIBLE_SINR = 3,
  CRN_E_PRIMARY_INFEASIBLE = 4,
  CRN_E_FEASIBILITY_REQUIRED = 5,
  CRN_E_INFEASIBLE_PROBLEM = 6,
  CRN_E_NO_CANDIDATE = 7,
  CRN_E_IO = 8,
  CRN_E_INTERNAL = 9
} crn_status;

typedef struct crn_scenario crn_scenario;
typedef struct crn_network crn_network;
typedef struct crn_fcir crn_fcir;

CRN_API const char* crn_version(void);
/* Message of the last failing call on this thread; "" if none. */
CRN_API const char* crn_last_error(void);
/* Frees strings returned through char** out parameters. */
CRN_API void crn_string_free(char* s);

/* Scenario configuration (JSON). Unknown keys are a CRN_E_CONFIG. */
CRN_API crn_status crn_scenario_from_file(const char* path, crn_scenario** out);
CRN_API crn_status crn_scenario_from_string(const char* json, crn_scenario** out);
CRN_API crn_status crn_scenario_patch(crn_scenario* scn, const char* json);
CRN_API crn_status crn_scenario_to_json(const crn_scenario* scn, char** out);
CRN_API void crn_scenario_free(crn_scenario* scn);

/* A scenario document with a "network" object yields that explicit network;
   otherwise snapshot k is drawn with seed = scenario seed + k, as in sweeps. */
CRN_API crn_status crn_network_from_scenario(const crn_scenario* scn, uint64_t snapshot,
                                             crn_network** out);
CRN_API crn_status crn_network_from_json(const char* json, crn_network** out);
CRN_API crn_status crn_network_to_json(const crn_network* net, char** out);
CRN_API crn_status crn_network_dims(const crn_network* net, int* num_pbs, int* num_sbs,
                                    int* num_pu, int* num_su);
CRN_API void crn_network_free(crn_network* net);

/* Region at the PU targets. */
CRN_API crn_status crn_fcir_build(const crn_network* net, crn_fcir** out);
CRN_API crn_status crn_fcir_contains(const crn_fcir* fcir, const double* interference, size_t n,
                                     int* inside);
CRN_API crn_status crn_fcir_baseline_itl(const crn_fcir* fcir, double alpha, double* itl,
                                         size_t n);
CRN_API crn_status crn_fcir_to_json(const crn_fcir* fcir, int boundary_samples, char** out);
CRN_API void crn_fcir_free(crn_fcir* fcir);

/* algorithm: "jpac" or "jpac-box" (alpha used only by the box variant). */
CRN_API crn_status crn_jpac_run(const crn_network* net, const char* algorithm, double alpha,
                                char** out_json);
/* algorithm: "gp-poly" or "gp-box". */
CRN_API crn_status crn_throughput_run(const crn_network* net, const char* algorithm, double alpha,
                                      char** out_json);

/* sweep_json keys: parameter ("none", "su", "d", "alpha"), values, algorithms,
   threads, record_runtime. They overlay the scenario's own "sweep" object.
   Writes results.csv, traces.csv, gp_traces.csv and summary.json into out_dir. */
CRN_API crn_status crn_experiment_run(const crn_scenario* scn, const char* sweep_json,
                                      const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif
