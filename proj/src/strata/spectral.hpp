// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace strata {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Trigonometric collocation on an even number of equispaced nodes over one
// period [0, lambda). Real cosine/sine coefficients, mode k = 0..n/2.
//
// Derivatives of arbitrary order act as multipliers in coefficient space.
// Coefficients whose magnitude is below coeff_floor * max|coeff| are treated
// as zero before a multiplier is applied: at high orders round-off in the
// tail modes would otherwise dominate the result.
class TrigBasis {
 public:
  TrigBasis(int n, double lambda);

  int size() const { return n_; }
  int max_mode() const { return n_ / 2; }
  double wavelength() const { return lambda_; }
  double omega() const { return omega_; }
  const VectorXd& nodes() const { return q_; }

  struct Coeffs {
    VectorXd cos_part;  // k = 0..n/2
    VectorXd sin_part;  // k = 1..n/2-1
  };

  Coeffs analyze(const VectorXd& values) const;
  VectorXd synthesize(const Coeffs& c) const;

  // One-sided mode amplitudes: r_0 = |A_0|, r_k = hypot(A_k, B_k).
  VectorXd mode_amplitudes(const VectorXd& values) const;

  // order-th derivative of a sampled periodic function.
  VectorXd derivative(const VectorXd& values, int order) const;

  // Collocation differentiation matrices (rows fixed so constants map to
  // exactly zero). Used by residual evaluation and linearization so both see
  // the identical linear operator.
  const MatrixXd& d1() const { return d1_; }
  const MatrixXd& d2() const { return d2_; }

  static constexpr double coeff_floor = 1e-14;

 private:
  int n_;
  double lambda_;
  double omega_;
  VectorXd q_;
  MatrixXd synth_cos_, synth_sin_;  // n x (n/2+1), n x (n/2-1)
  MatrixXd anal_cos_, anal_sin_;
  MatrixXd d1_, d2_;
};

// Chebyshev-Lobatto collocation on [p0, 0], nodes ascending and endpoint
// inclusive (clustered at both ends). p0 < 0.
class ChebBasis {
 public:
  ChebBasis(int n, double p0);

  int size() const { return n_; }
  double p0() const { return p0_; }
  const VectorXd& nodes() const { return p_; }

  VectorXd analyze(const VectorXd& values) const;
  VectorXd synthesize(const VectorXd& coeffs) const;

  // order-th derivative via the Chebyshev coefficient recurrence (with the
  // same relative coefficient floor as TrigBasis).
  VectorXd derivative(const VectorXd& values, int order) const;

  // Differentiation matrices: d1 is the barycentric form with the
  // negative-sum trick plus a rank-2 row fix making it exact on {1, p};
  // d2 = d1*d1 with the analogous fix. See spectral.cpp.
  const MatrixXd& d1() const { return d1_; }
  const MatrixXd& d2() const { return d2_; }

  // Barycentric interpolation of sampled values at an off-node point.
  double interpolate(const VectorXd& values, double p) const;
  // Row vector w such that w * values == interpolate(values, p).
  VectorXd interpolation_weights(double p) const;

  static constexpr double coeff_floor = 1e-14;

 private:
  VectorXd dcoef(const VectorXd& a) const;  // d/dp in coefficient space

  int n_;
  double p0_;
  VectorXd p_;
  VectorXd x_;  // reference nodes in [-1, 1], ascending
  VectorXd bary_w_;
  MatrixXd anal_, synth_;
  MatrixXd d1_, d2_;
};

}  // namespace strata
