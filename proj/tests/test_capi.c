/* Copyright 2026 strata-wave authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Exercises the shared-library C surface end to end: config parsing with
 * schema errors, the laminar and branch commands, state loading with
 * accessors, and the status/exit-code table.
 */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <unistd.h>

#include "strata_wave.h"

static int failures = 0;

static void expect(int cond, const char* what) {
  if (!cond) {
    fprintf(stderr, "FAIL: %s (last error: %s)\n", what, sw_last_error());
    ++failures;
  }
}

static const char* config_text =
    "{"
    "\"params\": {\"g\": 1.0, \"sigma\": 0.0, \"d\": 1.0, \"p0\": -1.0,"
    "  \"wavelength\": 6.283185307179586,"
    "  \"rho\": {\"kind\": \"constant\", \"coeffs\": [1.0]},"
    "  \"beta\": {\"kind\": \"constant\", \"coeffs\": [0.0]}},"
    "\"grid\": {\"n_q\": 32, \"n_p\": 16},"
    "\"solver\": {\"kappa0\": 1.0, \"kappa_range\": [0.5, 3.0],"
    "  \"amplitude_targets\": [0.002]},"
    "\"output_dir\": \"out\"}";

int run_capi_checks(void) {
  expect(strcmp(sw_version(), "") != 0, "version string");
  expect(sw_status_exit_code(SW_ERROR_CONFIG) == 2, "config exit code");
  expect(sw_status_exit_code(SW_ERROR_DIVERGED) == 3, "divergence exit code");
  expect(sw_status_exit_code(SW_ERROR_STAGNATION) == 4, "stagnation exit code");
  expect(sw_status_exit_code(SW_ERROR_BIFURCATION) == 5,
         "bifurcation exit code");
  expect(sw_status_exit_code(SW_ERROR_CHECKSUM) == 6, "checksum exit code");

  sw_config* bad = NULL;
  expect(sw_config_parse("{\"nonsense\": 1}", &bad) == SW_ERROR_CONFIG,
         "unknown keys are a config error");
  expect(bad == NULL, "no handle on failure");
  expect(strlen(sw_last_error()) > 0, "error message is set");

  sw_config* cfg = NULL;
  expect(sw_config_parse(config_text, &cfg) == SW_OK, "config parses");
  if (!cfg) return 1;

  char outdir[256];
  snprintf(outdir, sizeof outdir, "/tmp/strata_capi_%d", (int)getpid());

  expect(sw_run_laminar(cfg, outdir) == SW_OK, "laminar run");
  expect(sw_run_continue(cfg, outdir) == SW_OK, "continue run");
  expect(sw_run_lemmas(cfg, outdir) == SW_OK, "lemma sweep");

  char state_path[512];
  snprintf(state_path, sizeof state_path, "%s/state_0000.swf", outdir);
  sw_state* state = NULL;
  expect(sw_state_load(state_path, &state) == SW_OK, "state loads");
  if (state) {
    int nq = 0, np = 0;
    expect(sw_state_shape(state, &nq, &np) == SW_OK, "state shape");
    expect(nq == 32 && np == 16, "state dimensions");
    double Q = 0, amp = 0, res = 0;
    expect(sw_state_scalars(state, &Q, &amp, &res) == SW_OK, "state scalars");
    expect(amp > 0.0019 && amp < 0.0021, "state amplitude");
    expect(res <= 1e-10, "state residual");
    double* buf = (double*)malloc(sizeof(double) * (size_t)(nq * np));
    expect(sw_state_values(state, buf, (size_t)(nq * np)) == SW_OK,
           "state values");
    expect(buf[0] == 0.0, "bed row is zero");
    expect(sw_state_values(state, buf, 7) == SW_ERROR, "short buffer");
    free(buf);
    sw_state_free(state);
  }
  expect(sw_run_analyze(cfg, state_path, outdir) == SW_OK, "analyze run");
  expect(sw_state_load("/nonexistent.swf", &state) != SW_OK,
         "missing state fails");

  sw_config_free(cfg);
  if (failures == 0) printf("capi checks: all passed\n");
  return failures == 0 ? 0 : 1;
}
