// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/regularity.hpp"
#include "strata/solver.hpp"
#include "strata/strip.hpp"

namespace strata {

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 25;
  double kappa0 = 1.0;
  std::pair<double, double> kappa_range{0.2, 5.0};
  std::vector<double> amplitude_targets;
};

struct DiagnosticsConfig {
  int m_max = 12;
  double mu = 0.5;
  int order_budget_max = 8;
  int order_budget_p_max = 6;
  int k_max = 30;
  std::vector<double> p_levels;  // empty: defaults
};

struct RunConfig {
  WaveParameters params;
  int n_q = 64;
  int n_p = 32;
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  std::string output_dir = "out";
  std::uint64_t config_hash = 0;  // FNV-1a of the canonical form

  StripGrid make_grid() const {
    return StripGrid(n_q, n_p, params.lambda, params.p0);
  }
};

// Strict schema: unknown keys anywhere are rejected before any computation.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

std::uint64_t fnv1a(const void* data, std::size_t n,
                    std::uint64_t seed = 1469598103934665603ull);

}  // namespace strata
