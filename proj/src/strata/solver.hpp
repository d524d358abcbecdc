// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "strata/strip.hpp"

namespace strata {

// q-independent solution H(p) of the interior equation with H(p0) = 0,
// H'(p0) = kappa, together with the Bernoulli head from the flat surface
// condition (curvature term vanishes).
struct LaminarFlow {
  VectorXd profile;  // H at the grid's p nodes
  VectorXd slope;    // H' at the p nodes
  double Q;
  double kappa;
};

LaminarFlow solve_laminar(const WaveParameters& params, const StripGrid& grid,
                          double kappa0);

// Replicate a laminar profile across the q nodes.
HeightField laminar_field(const StripGrid& grid, const LaminarFlow& lam);

// true iff 0 < min h_p and max h_p <= 1/delta at every node.
bool check_no_stagnation(const HeightField& h, double delta);

enum class ConstraintMode {
  q_fixed,        // Q held at params.Q; phase pinned
  amplitude_pin,  // Q unknown; surface first cosine mode pinned, phase pinned
};

struct NewtonOptions {
  double tol = 1e-10;
  int max_iter = 25;
  int max_halvings = 8;
};

struct ContinuationState {
  HeightField h;
  double Q;
  double amplitude;  // first surface cosine Fourier mode
  int step_count;
  double residual_norm;
};

struct NewtonResult {
  ContinuationState state;
  std::vector<double> residual_history;  // per accepted iterate, PDE max-norm
  int iterations;
  double tau;  // translation-unfolding coordinate, ~0 at solutions
};

// Damped Newton on the bordered square system: PDE rows augmented with an
// artificial sine-profile column (translation unfolding), a phase row pinning
// the first surface sine mode and, in amplitude mode, an amplitude row.
NewtonResult newton_solve(const HeightField& h0, const WaveParameters& params,
                          ConstraintMode mode, double amplitude_target,
                          const NewtonOptions& opts = {});

// Slope kappa* at which the laminar linearization admits a cos(K q) kernel
// (K = mode_index * 2 pi / lambda), located by a dispersion shooting scan.
double find_bifurcation_kappa(const WaveParameters& params,
                              const StripGrid& grid, int mode_index,
                              std::pair<double, double> kappa_range);

// Kernel p-profile psi (normalized psi(0) = 1) of the laminar linearization.
VectorXd laminar_kernel_profile(const WaveParameters& params,
                                const StripGrid& grid, const LaminarFlow& lam,
                                int mode_index);

struct ContinuationOptions {
  NewtonOptions newton;
  std::pair<double, double> kappa_range{0.2, 5.0};
  int max_bisections = 6;
  int mode_index = 1;
};

struct ContinuationResult {
  double kappa_star = 0.0;
  LaminarFlow base;
  std::vector<ContinuationState> states;  // one per reached amplitude target
  bool aborted = false;
  std::string abort_reason;
};

// Amplitude continuation from the bifurcating laminar flow. Secant predictor
// in amplitude, damped Newton corrector with Q free; failed steps bisect the
// amplitude increment up to max_bisections times, then the partial branch is
// returned with aborted = true.
ContinuationResult continuation_run(const WaveParameters& params,
                                    const StripGrid& grid,
                                    const std::vector<double>& targets,
                                    const ContinuationOptions& opts = {});

}  // namespace strata
