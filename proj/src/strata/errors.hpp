// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

// Error taxonomy shared by the C++ core, the C API status codes and the CLI
// exit-code table.
enum class ErrorCode : int {
  ok = 0,
  generic = 1,
  config = 2,
  divergence = 3,
  stagnation = 4,
  bifurcation = 5,
  checksum = 6,
  domain = 7,
  resolution = 8,
  insufficient_modes = 9,
  unsupported_order = 10,
  rule_violation = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};

struct UnsupportedOrderError : Error {
  explicit UnsupportedOrderError(const std::string& w)
      : Error(ErrorCode::unsupported_order, w) {}
};

struct StagnationError : Error {
  explicit StagnationError(const std::string& w)
      : Error(ErrorCode::stagnation, w) {}
};

struct BlowUpError : Error {
  explicit BlowUpError(const std::string& w) : Error(ErrorCode::generic, w) {}
};

// Carries the residual history so callers can report why Newton gave up.
struct DivergenceError : Error {
  DivergenceError(const std::string& w, std::vector<double> history)
      : Error(ErrorCode::divergence, w), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

struct BifurcationError : Error {
  explicit BifurcationError(const std::string& w)
      : Error(ErrorCode::bifurcation, w) {}
};

struct ResolutionError : Error {
  explicit ResolutionError(const std::string& w)
      : Error(ErrorCode::resolution, w) {}
};

struct InsufficientModesError : Error {
  explicit InsufficientModesError(const std::string& w)
      : Error(ErrorCode::insufficient_modes, w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};

struct ChecksumError : Error {
  explicit ChecksumError(const std::string& w)
      : Error(ErrorCode::checksum, w) {}
};

struct RuleViolationError : Error {
  explicit RuleViolationError(const std::string& w)
      : Error(ErrorCode::rule_violation, w) {}
};

}  // namespace strata
