// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "strata/config.hpp"

namespace strata {

// Command implementations behind the CLI / C API: each validates, computes,
// writes files under out_dir and returns the summary JSON text it wrote.
std::string run_laminar(const RunConfig& cfg, const std::string& out_dir);
std::string run_solve(const RunConfig& cfg, const std::string& out_dir);
std::string run_continue(const RunConfig& cfg, const std::string& out_dir);
std::string run_analyze(const RunConfig& cfg, const std::string& state_path,
                        const std::string& out_dir);
std::string run_lemmas(const RunConfig& cfg, const std::string& out_dir,
                       int alpha_cap = 60, int m_cap = 200);

}  // namespace strata
