// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace strata {

// Streamline coefficient functions (Bernoulli term and density) on [p0, 0].
// Restricted to kinds whose derivatives of any order follow from a closed
// recurrence: finite differencing would corrupt the growth diagnostics the
// whole project is about.
class CoefficientFunction {
 public:
  enum class Kind {
    constant,      // coeffs[0]
    polynomial,    // sum coeffs[i] * p^i
    series,        // sum coeffs[i] * (p - p0)^i   (truncated power series)
    exponential,   // coeffs[0] * exp(coeffs[1] * p) + coeffs[2] (rest optional)
    rational,      // poly(coeffs) / poly(den), den nonzero on [p0, 0]
  };

  static constexpr int order_cap = 64;

  CoefficientFunction(Kind kind, std::vector<double> coeffs, double p0,
                      std::vector<double> den = {},
                      std::optional<double> declared_s = std::nullopt,
                      std::optional<double> declared_M = std::nullopt);

  static CoefficientFunction make_constant(double value, double p0);

  Kind kind() const { return kind_; }
  double p0() const { return p0_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<double>& den() const { return den_; }
  std::optional<double> declared_gevrey_index() const { return declared_s_; }
  std::optional<double> declared_constant() const { return declared_M_; }

  bool is_identically_zero() const;

  // k-th derivative at p, exact per kind up to rounding. k <= order_cap.
  double eval_derivative(int k, double p) const;
  double operator()(double p) const { return eval_derivative(0, p); }

 private:
  void check_domain(double p) const;

  Kind kind_;
  std::vector<double> coeffs_;
  std::vector<double> den_;
  double p0_;
  std::optional<double> declared_s_;
  std::optional<double> declared_M_;
};

CoefficientFunction::Kind coefficient_kind_from_string(const std::string& s);
std::string to_string(CoefficientFunction::Kind k);

// Default probe grid: 257 equispaced points in [p0, 0].
std::vector<double> default_probe_grid(double p0, int count = 257);

struct GevreyCheck {
  bool ok = false;
  double worst_ratio = 0.0;  // max |d^k f| / (M^(k+1) (k!)^s)
  int worst_k = 0;
  double worst_p = 0.0;
};

// True iff sup over the probe grid of |d^k f| <= M^(k+1) (k!)^s for all
// k <= k_max.
GevreyCheck verify_gevrey_bound(const CoefficientFunction& f, double s,
                                double M, int k_max,
                                const std::vector<double>& probe_grid);
GevreyCheck verify_gevrey_bound(const CoefficientFunction& f, double s,
                                double M, int k_max);

struct GevreyEstimate {
  double s_hat = 1.0;
  double M_hat = 0.0;
  bool degenerate = false;  // all-zero function
};

// Least lattice s (step 0.05) whose minimal M does not escape to the order
// cap, paired with that minimal M. Round trip: verify_gevrey_bound(f, s_hat,
// M_hat*(1+1e-6), k_max) always holds.
GevreyEstimate estimate_gevrey_constants(const CoefficientFunction& f,
                                         int k_max);

}  // namespace strata
