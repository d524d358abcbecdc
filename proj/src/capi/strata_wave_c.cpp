// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata_wave.h"

#include <cstring>
#include <string>

#include "strata/config.hpp"
#include "strata/errors.hpp"
#include "strata/field_io.hpp"
#include "strata/runner.hpp"

using strata::Error;
using strata::ErrorCode;

struct sw_config {
  strata::RunConfig cfg;
};

struct sw_state {
  strata::LoadedState st;
};

namespace {

thread_local std::string g_last_error;

sw_status status_from(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return SW_OK;
    case ErrorCode::config: return SW_ERROR_CONFIG;
    case ErrorCode::divergence: return SW_ERROR_DIVERGED;
    case ErrorCode::stagnation: return SW_ERROR_STAGNATION;
    case ErrorCode::bifurcation: return SW_ERROR_BIFURCATION;
    case ErrorCode::checksum: return SW_ERROR_CHECKSUM;
    case ErrorCode::domain: return SW_ERROR_DOMAIN;
    case ErrorCode::resolution: return SW_ERROR_RESOLUTION;
    case ErrorCode::insufficient_modes: return SW_ERROR_MODES;
    default: return SW_ERROR;
  }
}

template <typename Fn>
sw_status guarded(Fn&& fn) {
  try {
    fn();
    return SW_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SW_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return SW_ERROR;
  }
}

std::string pick_out_dir(const sw_config* cfg, const char* out_dir) {
  return out_dir && *out_dir ? std::string(out_dir) : cfg->cfg.output_dir;
}

}  // namespace

extern "C" {

const char* sw_version(void) { return "1.0.0"; }

const char* sw_last_error(void) { return g_last_error.c_str(); }

const char* sw_status_name(sw_status status) {
  switch (status) {
    case SW_OK: return "ok";
    case SW_ERROR: return "error";
    case SW_ERROR_CONFIG: return "config-error";
    case SW_ERROR_DIVERGED: return "divergence";
    case SW_ERROR_STAGNATION: return "stagnation";
    case SW_ERROR_BIFURCATION: return "bifurcation-point";
    case SW_ERROR_CHECKSUM: return "checksum";
    case SW_ERROR_DOMAIN: return "domain-error";
    case SW_ERROR_RESOLUTION: return "resolution-error";
    case SW_ERROR_MODES: return "insufficient-modes";
  }
  return "?";
}

int sw_status_exit_code(sw_status status) { return static_cast<int>(status); }

sw_status sw_config_load(const char* path, sw_config** out) {
  if (!path || !out) return SW_ERROR;
  *out = nullptr;
  return guarded([&] { *out = new sw_config{strata::load_run_config(path)}; });
}

sw_status sw_config_parse(const char* json_text, sw_config** out) {
  if (!json_text || !out) return SW_ERROR;
  *out = nullptr;
  return guarded(
      [&] { *out = new sw_config{strata::parse_run_config(json_text)}; });
}

void sw_config_free(sw_config* cfg) { delete cfg; }

sw_status sw_run_laminar(const sw_config* cfg, const char* out_dir) {
  if (!cfg) return SW_ERROR;
  return guarded(
      [&] { strata::run_laminar(cfg->cfg, pick_out_dir(cfg, out_dir)); });
}

sw_status sw_run_solve(const sw_config* cfg, const char* out_dir) {
  if (!cfg) return SW_ERROR;
  return guarded(
      [&] { strata::run_solve(cfg->cfg, pick_out_dir(cfg, out_dir)); });
}

sw_status sw_run_continue(const sw_config* cfg, const char* out_dir) {
  if (!cfg) return SW_ERROR;
  return guarded(
      [&] { strata::run_continue(cfg->cfg, pick_out_dir(cfg, out_dir)); });
}

sw_status sw_run_analyze(const sw_config* cfg, const char* state_path,
                         const char* out_dir) {
  if (!cfg || !state_path) return SW_ERROR;
  return guarded([&] {
    strata::run_analyze(cfg->cfg, state_path, pick_out_dir(cfg, out_dir));
  });
}

sw_status sw_run_lemmas(const sw_config* cfg, const char* out_dir) {
  if (!cfg) return SW_ERROR;
  return guarded(
      [&] { strata::run_lemmas(cfg->cfg, pick_out_dir(cfg, out_dir)); });
}

sw_status sw_state_load(const char* path, sw_state** out) {
  if (!path || !out) return SW_ERROR;
  *out = nullptr;
  return guarded([&] { *out = new sw_state{strata::load_state(path)}; });
}

void sw_state_free(sw_state* state) { delete state; }

sw_status sw_state_shape(const sw_state* state, int* n_q, int* n_p) {
  if (!state) return SW_ERROR;
  if (n_q) *n_q = state->st.h.grid().n_q;
  if (n_p) *n_p = state->st.h.grid().n_p;
  return SW_OK;
}

sw_status sw_state_scalars(const sw_state* state, double* Q, double* amplitude,
                           double* residual_norm) {
  if (!state) return SW_ERROR;
  if (Q) *Q = state->st.meta.Q;
  if (amplitude) *amplitude = state->st.meta.amplitude;
  if (residual_norm) *residual_norm = state->st.meta.residual_norm;
  return SW_OK;
}

sw_status sw_state_values(const sw_state* state, double* buffer, size_t len) {
  if (!state || !buffer) return SW_ERROR;
  const auto& h = state->st.h;
  const size_t need =
      static_cast<size_t>(h.grid().n_p) * static_cast<size_t>(h.grid().n_q);
  if (len < need) {
    g_last_error = "buffer too small";
    return SW_ERROR;
  }
  for (int j = 0; j < h.grid().n_p; ++j)
    for (int i = 0; i < h.grid().n_q; ++i)
      buffer[static_cast<size_t>(j) * h.grid().n_q + i] = h.values()(j, i);
  return SW_OK;
}

}  // extern "C"
