// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "strata/function_space.hpp"
#include "strata/spectral.hpp"

namespace strata {

// One period of the hodograph strip: n_q equispaced periodic nodes in q,
// n_p Chebyshev-Lobatto nodes in p (endpoint inclusive, p0 first, 0 last).
struct StripGrid {
  StripGrid(int n_q, int n_p, double lambda, double p0);

  int n_q;
  int n_p;
  double lambda;
  double p0;
  std::shared_ptr<const TrigBasis> trig;
  std::shared_ptr<const ChebBasis> cheb;

  const VectorXd& q_nodes() const { return trig->nodes(); }
  const VectorXd& p_nodes() const { return cheb->nodes(); }
  bool same_layout(const StripGrid& o) const {
    return n_q == o.n_q && n_p == o.n_p && lambda == o.lambda && p0 == o.p0;
  }
};

enum class FlowRegime { capillary, gravity, capillary_gravity };

struct WaveParameters {
  double g = 1.0;
  double sigma = 0.0;
  double Q = 0.0;
  double d = 1.0;
  CoefficientFunction rho;
  CoefficientFunction beta;
  double lambda = 2.0 * M_PI;
  double p0 = -1.0;

  WaveParameters(double g, double sigma, double Q, double d,
                 CoefficientFunction rho, CoefficientFunction beta,
                 double lambda, double p0);

  FlowRegime regime() const;
};

std::string to_string(FlowRegime r);

// The unknown h(q,p) sampled on a StripGrid, immutable once constructed.
// Derivative fields are precomputed with the grid's collocation matrices so
// residual evaluation and linearization see the identical linear maps.
class HeightField {
 public:
  static constexpr double hp_floor = 1e-6;

  HeightField(StripGrid grid, Eigen::MatrixXd values);

  const StripGrid& grid() const { return grid_; }
  const Eigen::MatrixXd& values() const { return h_; }  // n_p x n_q, row 0 bed
  const Eigen::MatrixXd& hq() const { return hq_; }
  const Eigen::MatrixXd& hp() const { return hp_; }
  const Eigen::MatrixXd& hpp() const { return hpp_; }
  const Eigen::MatrixXd& hpq() const { return hpq_; }
  const Eigen::MatrixXd& hqq() const { return hqq_; }
  double min_hp() const { return min_hp_; }
  double max_hp() const { return max_hp_; }

  VectorXd surface_trace() const { return h_.row(grid_.n_p - 1); }
  // First cosine / sine surface modes (amplitude and phase bookkeeping).
  double surface_cos1() const;
  double surface_sin1() const;

 private:
  StripGrid grid_;
  Eigen::MatrixXd h_, hq_, hp_, hpp_, hpq_, hqq_;
  double min_hp_, max_hp_;
};

// Pointwise residual of the interior equation on the interior collocation
// rows (p rows 1..n_p-2); zero iff h solves the interior equation there.
Eigen::MatrixXd interior_residual(const HeightField& h,
                                  const WaveParameters& params);

// Residual of the dynamic surface condition on the p = 0 row. sigma = 0
// selects the gravity form automatically.
VectorXd surface_residual(const HeightField& h, const WaveParameters& params);

// h_qq / (1 + h_q^2)^(3/2) on the surface row (no surface-tension factor).
VectorXd curvature_term(const HeightField& h);

// Frechet derivative of (interior rows, surface row) with respect to h (bed
// row of the perturbation is held at zero) and optionally Q.
struct LinearOperator {
  StripGrid grid;
  Eigen::MatrixXd J;      // n x n, n = (n_p - 1) * n_q; rows: interior, surface
  VectorXd q_column;      // d residual / dQ (zero if q_unknown was false)

  // Action on a full perturbation field (bed row ignored) and a Q increment.
  VectorXd apply(const Eigen::MatrixXd& phi, double dQ) const;
};

LinearOperator linearize(const HeightField& h, const WaveParameters& params,
                         bool q_unknown);

namespace detail {

// Solver-internal evaluation on raw matrices (no HeightField invariants, so
// Newton can see residuals of transient iterates).
struct FieldDerivs {
  Eigen::MatrixXd hq, hp, hpp, hpq, hqq;
};
FieldDerivs field_derivs(const StripGrid& g, const Eigen::MatrixXd& h);

// Stacked [interior rows; surface row] residual, n = (n_p-1)*n_q entries;
// layout idx(i, j) = (j-1)*n_q + i for p-row j = 1..n_p-1.
VectorXd residual_vector(const StripGrid& g, const Eigen::MatrixXd& h,
                         const FieldDerivs& d, const WaveParameters& params,
                         double Q);

Eigen::MatrixXd jacobian_matrix(const StripGrid& g, const Eigen::MatrixXd& h,
                                const FieldDerivs& d,
                                const WaveParameters& params, double Q);

VectorXd q_column(const StripGrid& g, const FieldDerivs& d);

}  // namespace detail

}  // namespace strata
