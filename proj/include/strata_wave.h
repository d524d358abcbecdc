/*
 * Copyright 2026 strata-wave authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the strata-wave shared library: steady periodic stratified
 * water waves on the hodograph strip, with regularity diagnostics and
 * combinatorial-inequality sweeps. Handles are opaque; every entry point
 * returns a status code and the last error message is kept per thread.
 */

#ifndef STRATA_WAVE_H
#define STRATA_WAVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sw_config sw_config;
typedef struct sw_state sw_state;

typedef enum sw_status {
  SW_OK = 0,
  SW_ERROR = 1,             /* unspecified failure */
  SW_ERROR_CONFIG = 2,      /* schema violation / bad config */
  SW_ERROR_DIVERGED = 3,    /* solver did not converge */
  SW_ERROR_STAGNATION = 4,  /* h_p floor violated */
  SW_ERROR_BIFURCATION = 5, /* singular Jacobian / no bifurcation found */
  SW_ERROR_CHECKSUM = 6,    /* corrupted state file */
  SW_ERROR_DOMAIN = 7,
  SW_ERROR_RESOLUTION = 8,
  SW_ERROR_MODES = 9
} sw_status;

const char* sw_version(void);

/* Thread-local message describing the most recent failure. */
const char* sw_last_error(void);

const char* sw_status_name(sw_status status);

/* Process exit code the CLI maps a status to (identity mapping). */
int sw_status_exit_code(sw_status status);

/* Configuration ---------------------------------------------------------- */

sw_status sw_config_load(const char* path, sw_config** out);
sw_status sw_config_parse(const char* json_text, sw_config** out);
void sw_config_free(sw_config* cfg);

/* Commands: each writes its files under out_dir (out_dir == NULL uses the
 * config's output_dir). */

sw_status sw_run_laminar(const sw_config* cfg, const char* out_dir);
sw_status sw_run_solve(const sw_config* cfg, const char* out_dir);
sw_status sw_run_continue(const sw_config* cfg, const char* out_dir);
sw_status sw_run_analyze(const sw_config* cfg, const char* state_path,
                         const char* out_dir);
sw_status sw_run_lemmas(const sw_config* cfg, const char* out_dir);

/* States ------------------------------------------------------------------ */

sw_status sw_state_load(const char* path, sw_state** out);
void sw_state_free(sw_state* state);

sw_status sw_state_shape(const sw_state* state, int* n_q, int* n_p);
sw_status sw_state_scalars(const sw_state* state, double* Q, double* amplitude,
                           double* residual_norm);
/* Row-major n_p x n_q copy of the height samples; buffer of n_q*n_p doubles. */
sw_status sw_state_values(const sw_state* state, double* buffer, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* STRATA_WAVE_H */
