// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/strip.hpp"

#include <cmath>

#include "strata/errors.hpp"

namespace strata {

StripGrid::StripGrid(int n_q_, int n_p_, double lambda_, double p0_)
    : n_q(n_q_), n_p(n_p_), lambda(lambda_), p0(p0_) {
  if (n_q < 4 || n_q % 2 != 0) throw DomainError("n_q must be even and >= 4");
  if (n_p < 4) throw DomainError("n_p must be >= 4");
  trig = std::make_shared<TrigBasis>(n_q, lambda);
  cheb = std::make_shared<ChebBasis>(n_p, p0);
}

WaveParameters::WaveParameters(double g_, double sigma_, double Q_, double d_,
                               CoefficientFunction rho_,
                               CoefficientFunction beta_, double lambda_,
                               double p0_)
    : g(g_),
      sigma(sigma_),
      Q(Q_),
      d(d_),
      rho(std::move(rho_)),
      beta(std::move(beta_)),
      lambda(lambda_),
      p0(p0_) {
  if (g < 0 || sigma < 0) throw ConfigError("g and sigma must be >= 0");
  if (g == 0 && sigma == 0)
    throw ConfigError("need gravity or surface tension (g = sigma = 0)");
  if (!(d > 0)) throw ConfigError("mean depth d must be positive");
  if (!(p0 < 0)) throw ConfigError("p0 must be negative");
  if (!(lambda > 0)) throw ConfigError("wavelength must be positive");
  for (double p : default_probe_grid(p0, 129))
    if (!(rho.eval_derivative(0, p) > 0.0))
      throw ConfigError("density must be strictly positive on [p0, 0]");
}

FlowRegime WaveParameters::regime() const {
  if (g == 0) return FlowRegime::capillary;
  if (sigma == 0) return FlowRegime::gravity;
  return FlowRegime::capillary_gravity;
}

std::string to_string(FlowRegime r) {
  switch (r) {
    case FlowRegime::capillary: return "capillary";
    case FlowRegime::gravity: return "gravity";
    case FlowRegime::capillary_gravity: return "capillary-gravity";
  }
  return "?";
}

namespace detail {

FieldDerivs field_derivs(const StripGrid& g, const Eigen::MatrixXd& h) {
  FieldDerivs d;
  const MatrixXd dq_t = g.trig->d1().transpose();
  d.hq = h * dq_t;
  d.hqq = h * g.trig->d2().transpose();
  d.hp = g.cheb->d1() * h;
  d.hpp = g.cheb->d2() * h;
  d.hpq = g.cheb->d1() * d.hq;
  return d;
}

namespace {

struct CoeffSamples {
  VectorXd rho_p;   // rho'(p_j)
  VectorXd beta;    // beta(p_j)
  double rho0;      // rho(0)
};

CoeffSamples sample_coeffs(const StripGrid& g, const WaveParameters& params) {
  CoeffSamples s;
  s.rho_p.resize(g.n_p);
  s.beta.resize(g.n_p);
  for (int j = 0; j < g.n_p; ++j) {
    const double p = g.p_nodes()(j);
    s.rho_p(j) = params.rho.eval_derivative(1, p);
    s.beta(j) = params.beta.eval_derivative(0, p);
  }
  s.rho0 = params.rho.eval_derivative(0, 0.0);
  return s;
}

}  // namespace

VectorXd residual_vector(const StripGrid& g, const Eigen::MatrixXd& h,
                         const FieldDerivs& d, const WaveParameters& params,
                         double Q) {
  const int nq = g.n_q, np = g.n_p;
  const CoeffSamples cs = sample_coeffs(g, params);
  VectorXd r((np - 1) * nq);
  for (int j = 1; j <= np - 2; ++j) {
    for (int i = 0; i < nq; ++i) {
      const double hq = d.hq(j, i), hp = d.hp(j, i), hpp = d.hpp(j, i);
      const double hpq = d.hpq(j, i), hqq = d.hqq(j, i);
      const double hp3 = hp * hp * hp;
      r((j - 1) * nq + i) = (1.0 + hq * hq) * hpp - 2.0 * hp * hq * hpq +
                            hp * hp * hqq -
                            params.g * (h(j, i) - params.d) * cs.rho_p(j) * hp3 +
                            cs.beta(j) * hp3;
    }
  }
  const int js = np - 1;
  for (int i = 0; i < nq; ++i) {
    const double hq = d.hq(js, i), hp = d.hp(js, i), hqq = d.hqq(js, i);
    const double w = std::pow(1.0 + hq * hq, -1.5);
    const double bern =
        2.0 * params.g * cs.rho0 * h(js, i) - 2.0 * params.sigma * hqq * w - Q;
    r((js - 1) * nq + i) = 1.0 + hq * hq + bern * hp * hp;
  }
  return r;
}

Eigen::MatrixXd jacobian_matrix(const StripGrid& g, const Eigen::MatrixXd& h,
                                const FieldDerivs& d,
                                const WaveParameters& params, double Q) {
  const int nq = g.n_q, np = g.n_p;
  const int n = (np - 1) * nq;
  const CoeffSamples cs = sample_coeffs(g, params);
  const MatrixXd& dq1 = g.trig->d1();
  const MatrixXd& dq2 = g.trig->d2();
  const MatrixXd& dp1 = g.cheb->d1();
  const MatrixXd& dp2 = g.cheb->d2();

  MatrixXd J = MatrixXd::Zero(n, n);
  // interior equations, p rows 1..np-2
  for (int j = 1; j <= np - 2; ++j) {
    VectorXd c_pp(nq), c_qp(nq), c_qq(nq), c_q(nq), c_p(nq), c_0(nq);
    for (int i = 0; i < nq; ++i) {
      const double hq = d.hq(j, i), hp = d.hp(j, i), hpp = d.hpp(j, i);
      const double hpq = d.hpq(j, i), hqq = d.hqq(j, i);
      c_pp(i) = 1.0 + hq * hq;
      c_qp(i) = -2.0 * hp * hq;
      c_qq(i) = hp * hp;
      c_q(i) = 2.0 * hq * hpp - 2.0 * hp * hpq;
      c_p(i) = -2.0 * hq * hpq + 2.0 * hp * hqq -
               3.0 * params.g * (h(j, i) - params.d) * cs.rho_p(j) * hp * hp +
               3.0 * cs.beta(j) * hp * hp;
      c_0(i) = -params.g * cs.rho_p(j) * hp * hp * hp;
    }
    // block shared across all column p-rows: c_qp * Dq1 + c_p * I
    MatrixXd m1 = c_qp.asDiagonal() * dq1;
    m1.diagonal() += c_p;
    for (int jc = 1; jc <= np - 1; ++jc) {
      auto block = J.block((j - 1) * nq, (jc - 1) * nq, nq, nq);
      block.noalias() += dp1(j, jc) * m1;
      block.diagonal().array() += dp2(j, jc) * c_pp.array();
      if (jc == j) {
        block.noalias() += c_qq.asDiagonal() * dq2;
        block.noalias() += c_q.asDiagonal() * dq1;
        block.diagonal() += c_0;
      }
    }
  }
  // surface equation, p row np-1
  const int js = np - 1;
  {
    VectorXd s_qq(nq), s_q(nq), s_p(nq), s_0(nq);
    for (int i = 0; i < nq; ++i) {
      const double hq = d.hq(js, i), hp = d.hp(js, i), hqq = d.hqq(js, i);
      const double opq = 1.0 + hq * hq;
      const double w = std::pow(opq, -1.5);
      const double bern =
          2.0 * params.g * cs.rho0 * h(js, i) - 2.0 * params.sigma * hqq * w - Q;
      s_qq(i) = -2.0 * params.sigma * w * hp * hp;
      s_q(i) = 2.0 * hq +
               6.0 * params.sigma * hqq * hq * std::pow(opq, -2.5) * hp * hp;
      s_p(i) = 2.0 * hp * bern;
      s_0(i) = 2.0 * params.g * cs.rho0 * hp * hp;
    }
    for (int jc = 1; jc <= np - 1; ++jc) {
      auto block = J.block((js - 1) * nq, (jc - 1) * nq, nq, nq);
      block.diagonal().array() += dp1(js, jc) * s_p.array();
      if (jc == js) {
        block.noalias() += s_qq.asDiagonal() * dq2;
        block.noalias() += s_q.asDiagonal() * dq1;
        block.diagonal() += s_0;
      }
    }
  }
  return J;
}

VectorXd q_column(const StripGrid& g, const FieldDerivs& d) {
  const int nq = g.n_q, np = g.n_p;
  VectorXd col = VectorXd::Zero((np - 1) * nq);
  const int js = np - 1;
  for (int i = 0; i < nq; ++i)
    col((js - 1) * nq + i) = -d.hp(js, i) * d.hp(js, i);
  return col;
}

}  // namespace detail

HeightField::HeightField(StripGrid grid, Eigen::MatrixXd values)
    : grid_(std::move(grid)), h_(std::move(values)) {
  if (h_.rows() != grid_.n_p || h_.cols() != grid_.n_q)
    throw DomainError("height field shape does not match grid");
  const double scale = std::max(1.0, h_.cwiseAbs().maxCoeff());
  if (h_.row(0).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw DomainError("height field must vanish on the bed row");
  h_.row(0).setZero();

  auto d = detail::field_derivs(grid_, h_);
  hq_ = std::move(d.hq);
  hp_ = std::move(d.hp);
  hpp_ = std::move(d.hpp);
  hpq_ = std::move(d.hpq);
  hqq_ = std::move(d.hqq);
  min_hp_ = hp_.minCoeff();
  max_hp_ = hp_.maxCoeff();
  if (!(min_hp_ >= hp_floor))
    throw StagnationError("h_p below the no-stagnation floor");

  // spectral representation must reproduce the samples
  const auto& tb = *grid_.trig;
  VectorXd row = h_.row(grid_.n_p - 1);
  VectorXd back = tb.synthesize(tb.analyze(row));
  if ((back - row).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DomainError("q-spectral round trip failed");
}

double HeightField::surface_cos1() const {
  auto c = grid_.trig->analyze(surface_trace());
  return c.cos_part(1);
}

double HeightField::surface_sin1() const {
  auto c = grid_.trig->analyze(surface_trace());
  return c.sin_part(0);
}

Eigen::MatrixXd interior_residual(const HeightField& h,
                                  const WaveParameters& params) {
  const auto& g = h.grid();
  detail::FieldDerivs d{h.hq(), h.hp(), h.hpp(), h.hpq(), h.hqq()};
  VectorXd r = detail::residual_vector(g, h.values(), d, params, params.Q);
  Eigen::MatrixXd out(g.n_p - 2, g.n_q);
  for (int j = 1; j <= g.n_p - 2; ++j)
    out.row(j - 1) = r.segment((j - 1) * g.n_q, g.n_q);
  return out;
}

VectorXd surface_residual(const HeightField& h, const WaveParameters& params) {
  const auto& g = h.grid();
  detail::FieldDerivs d{h.hq(), h.hp(), h.hpp(), h.hpq(), h.hqq()};
  VectorXd r = detail::residual_vector(g, h.values(), d, params, params.Q);
  return r.tail(g.n_q);
}

VectorXd curvature_term(const HeightField& h) {
  const int js = h.grid().n_p - 1;
  const int nq = h.grid().n_q;
  VectorXd out(nq);
  for (int i = 0; i < nq; ++i) {
    const double hq = h.hq()(js, i);
    out(i) = h.hqq()(js, i) * std::pow(1.0 + hq * hq, -1.5);
  }
  return out;
}

VectorXd LinearOperator::apply(const Eigen::MatrixXd& phi, double dQ) const {
  const int nq = grid.n_q, np = grid.n_p;
  VectorXd x((np - 1) * nq);
  for (int j = 1; j <= np - 1; ++j) x.segment((j - 1) * nq, nq) = phi.row(j);
  return J * x + q_column * dQ;
}

LinearOperator linearize(const HeightField& h, const WaveParameters& params,
                         bool q_unknown) {
  const auto& g = h.grid();
  detail::FieldDerivs d{h.hq(), h.hp(), h.hpp(), h.hpq(), h.hqq()};
  LinearOperator op{g, detail::jacobian_matrix(g, h.values(), d, params,
                                               params.Q),
                    VectorXd::Zero((g.n_p - 1) * g.n_q)};
  if (q_unknown) op.q_column = detail::q_column(g, d);
  return op;
}

}  // namespace strata
