/* detune_sim.h — C API of the detune-sim shared library.
 *
 * All entry points return ds_status; DS_OK is 0. On failure,
 * ds_last_error() returns a thread-local diagnostic for the failing
 * call. Handles are opaque and must be released with the matching
 * _free function. The library is stateless apart from the handles;
 * handles are safe to use from the creating thread or with external
 * synchronization.
 */

#ifndef DETUNE_SIM_H
#define DETUNE_SIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ds_status {
    DS_OK = 0,
    DS_ERR_INVALID_ARGUMENT = 1,
    DS_ERR_PARSE = 2,
    DS_ERR_VALIDATION = 3,
    DS_ERR_DIMENSION = 4,
    DS_ERR_NON_HERMITIAN = 5,
    DS_ERR_NON_PHYSICAL_STATE = 6,
    DS_ERR_DEGENERATE_SCALE = 7,
    DS_ERR_UNKNOWN_METRIC = 8,
    DS_ERR_DOMAIN = 9,
    DS_ERR_IO = 10,
    DS_ERR_INTERNAL = 99
} ds_status;

typedef struct ds_config ds_config;
typedef struct ds_run_result ds_run_result;
typedef struct ds_validation ds_validation;

/* Library version, e.g. "0.1.0". */
const char* ds_version(void);

/* Static name of a status code, e.g. "DS_ERR_PARSE". */
const char* ds_status_name(ds_status status);

/* Thread-local message from the most recent failing call; "" if none. */
const char* ds_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Parse a JSON config file / text into a validated config (defaults
 * applied, unknown keys rejected). */
ds_status ds_config_load(const char* path, ds_config** out);
ds_status ds_config_from_json(const char* json_text, ds_config** out);

/* Re-parse with one dotted-path override applied, e.g.
 * ds_config_set(&cfg, "parameters.N", "25"). Replaces *cfg on success. */
ds_status ds_config_set(ds_config** cfg, const char* key, const char* value);

/* Canonical JSON echo of the validated config and its provenance hash. */
const char* ds_config_canonical_json(const ds_config* cfg);
const char* ds_config_hash(const ds_config* cfg);

void ds_config_free(ds_config* cfg);

/* --- execution ---------------------------------------------------------- */

/* Run the configured command; writes CSV/SVG/manifest outputs. */
ds_status ds_run(const ds_config* cfg, ds_run_result** out);

size_t ds_run_result_file_count(const ds_run_result* result);
const char* ds_run_result_file(const ds_run_result* result, size_t index);
const char* ds_run_result_summary(const ds_run_result* result);
void ds_run_result_free(ds_run_result* result);

/* --- scalar queries ------------------------------------------------------ */

/* Peak |+> -> |-> transfer probability theta^2/(1+theta^2),
 * theta = 2 sqrt(N) g / Delta. */
ds_status ds_max_leakage(int n_atoms, double g, double delta, double* out);

/* Smallest detuning with peak leakage <= leak_tol. */
ds_status ds_min_detuning(int n_atoms, double g, double leak_tol, double* out);

/* Least-squares slope of log Delta*(N) vs log N over n_list. */
ds_status ds_scaling_exponent(const int* n_list, size_t n_count, double g,
                              double leak_tol, double* out);

/* --- built-in validation suite ------------------------------------------- */

ds_status ds_validate(ds_validation** out);
size_t ds_validation_count(const ds_validation* v);
const char* ds_validation_name(const ds_validation* v, size_t index);
int ds_validation_passed(const ds_validation* v, size_t index); /* 1 or 0 */
const char* ds_validation_detail(const ds_validation* v, size_t index);
void ds_validation_free(ds_validation* v);

#ifdef __cplusplus
}
#endif

#endif /* DETUNE_SIM_H */
