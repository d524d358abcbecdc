// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "strata/strip.hpp"

namespace strata {

// d_q^a1 d_p^a2 of a field sampled on the grid; q by Fourier multiplier,
// p by repeated Chebyshev coefficient recurrence. Orders are guarded
// (a1 <= n_q/4, a2 <= n_p/2) because each differentiation amplifies
// round-off; beyond the guard the result would be silently wrong.
Eigen::MatrixXd spectral_derivative(const StripGrid& grid,
                                    const Eigen::MatrixXd& field, int a1,
                                    int a2);
Eigen::MatrixXd spectral_derivative(const HeightField& h, int a1, int a2);

// Discrete surrogate of the C^{k,mu} norm on the strip: sup over nodes of
// all derivatives of order <= k plus the max pairwise Hölder quotient of the
// order-k derivatives (periodic q-distance).
double discrete_holder_norm(const StripGrid& grid, const Eigen::MatrixXd& field,
                            int k, double mu);

// Same for a periodic 1-d trace.
double discrete_holder_norm_1d(const TrigBasis& basis, const VectorXd& trace,
                               int k, double mu);

// Pairwise |f_a - f_b| / dist^mu maxima, with the distance powers cached so
// a sequence of fields on one grid can share them.
class HolderPairCache {
 public:
  HolderPairCache(const StripGrid& grid, double mu);
  double quotient_max(const Eigen::MatrixXd& field) const;
  double mu() const { return mu_; }

 private:
  int n_;
  double mu_;
  std::vector<float> inv_dist_mu_;  // upper-triangular pair powers
};

// Growth ratios r_m = (||d_q^m h||_{2,mu} / (m-2)!)^(1/(m-1)) for m = 3..m_max
// and the induced analyticity-rate estimate.
struct GrowthDiagnostic {
  std::vector<double> ratios;   // index 0 <-> m = 3
  double L_estimate;            // max of r_m over m in [m_max/2, m_max]
  bool tail_nonincreasing;      // r_{m+1} <= 1.05 r_m for m >= 6
  int m_max;
};
GrowthDiagnostic derivative_growth_diagnostic(const HeightField& h, int m_max,
                                              double mu);

// Least-squares fit of log|c_k| vs k over the usable modes (above the 1e-13
// amplitude floor, below 2/3 Nyquist). Throws InsufficientModesError when
// fewer than 8 modes qualify.
struct DecayFit {
  double rate;       // a >= 0; |c_k| ~ exp(intercept - a k)
  double intercept;
  double r2;
  int n_modes;
  std::vector<std::pair<int, double>> fit_data;  // (k, log amplitude)
};
DecayFit fourier_decay_fit(const TrigBasis& basis, const VectorXd& trace);

// Gevrey index from |c_k| ~ C exp(-b k^(1/s)): lattice least squares over s.
struct GevreyFit {
  double s_hat;
  double fit_residual;  // rms of the best fit in log space
  int n_modes;
};
GevreyFit gevrey_index_fit(const TrigBasis& basis, const VectorXd& trace);

// Smallest lattice pair L2 >= L1 >= 1 (factor-1.1 steps) with
// ||d^alpha h||_2 <= L1^(a1-1) L2^(a2) ((|alpha|-2)!)^s for the whole budget,
// where ||.||_2 is the discrete C^{2,0} surrogate.
struct MixedDerivativeFit {
  double L1 = 1.0, L2 = 1.0;
  bool feasible = false;
};
MixedDerivativeFit mixed_derivative_fit(
    const HeightField& h, const std::vector<std::pair<int, int>>& order_budget,
    double s);

// Default budget: all |alpha| in [2, max_total] with alpha_2 <= max_p.
std::vector<std::pair<int, int>> default_order_budget(int max_total, int max_p);

// Residual of the m-times q-differentiated system, assembled from explicit
// Leibniz sums (independent of linearize): interior and surface max-norms.
struct DifferentiatedSystemResidual {
  double interior;
  double surface;
};
DifferentiatedSystemResidual check_differentiated_system(
    const HeightField& h, int m, const WaveParameters& params);

struct StreamlineDecay {
  double p_level;
  double rate = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int n_modes = 0;
  bool degenerate = false;  // spectrum too thin for a fit
};

struct RegularityReport {
  std::vector<StreamlineDecay> per_p_decay;
  double analyticity_half_width = 0.0;  // min over levels of rate*lambda/(2pi)
  std::vector<double> growth_ratios;
  double L_estimate = 0.0;
  bool growth_tail_ok = false;
  double gevrey_index_hat = 1.0;
  double gevrey_fit_residual = 0.0;
  bool gevrey_degenerate = false;
  double fm_L1 = 1.0, fm_L2 = 1.0;
  bool fm_feasible = false;
  double mu = 0.5;
  int m_max = 12;
};

struct RegularityOptions {
  int m_max = 12;
  double mu = 0.5;
  int budget_total = 8;
  int budget_p = 6;
  double fm_s = 1.0;
  std::vector<double> p_levels;  // empty: surface + 5 upper interior levels
};

RegularityReport analyze_regularity(const HeightField& h,
                                    const WaveParameters& params,
                                    const RegularityOptions& opts);

}  // namespace strata
