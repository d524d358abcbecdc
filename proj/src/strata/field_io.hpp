// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "strata/strip.hpp"

namespace strata {

// Single-file state format: one JSON header line (grid metadata, scalars,
// config hash, payload checksum) + '\n' + row-major little-endian float64
// block. The binary block makes the round trip bit-exact.
struct StateMeta {
  double Q = 0.0;
  double amplitude = 0.0;
  double residual_norm = 0.0;
  std::uint64_t config_hash = 0;
};

void save_state(const std::string& path, const HeightField& h,
                const StateMeta& meta);

struct LoadedState {
  HeightField h;
  StateMeta meta;
};

// Throws ChecksumError when the payload does not match the recorded hash.
LoadedState load_state(const std::string& path);

}  // namespace strata
