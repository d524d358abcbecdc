// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "strata/errors.hpp"

namespace strata {

namespace {

double laminar_rhs(const WaveParameters& params, double p, double H, double W) {
  const double rp = params.rho.eval_derivative(1, p);
  const double b = params.beta.eval_derivative(0, p);
  return (params.g * (H - params.d) * rp - b) * W * W * W;
}

// Fixed-step RK4 on [H, W] hitting every collocation node; predictor quality
// only, the collocation Newton below owns the accuracy.
void rk4_predict(const WaveParameters& params, const VectorXd& p_nodes,
                 double kappa0, VectorXd& H_out, VectorXd& W_out) {
  const int np = static_cast<int>(p_nodes.size());
  H_out.resize(np);
  W_out.resize(np);
  double H = 0.0, W = kappa0;
  H_out(0) = H;
  W_out(0) = W;
  for (int j = 0; j + 1 < np; ++j) {
    const double span = p_nodes(j + 1) - p_nodes(j);
    const int sub = 32;
    const double dt = span / sub;
    double p = p_nodes(j);
    for (int s = 0; s < sub; ++s) {
      const double k1H = W, k1W = laminar_rhs(params, p, H, W);
      const double k2H = W + 0.5 * dt * k1W,
                   k2W = laminar_rhs(params, p + 0.5 * dt, H + 0.5 * dt * k1H,
                                     W + 0.5 * dt * k1W);
      const double k3H = W + 0.5 * dt * k2W,
                   k3W = laminar_rhs(params, p + 0.5 * dt, H + 0.5 * dt * k2H,
                                     W + 0.5 * dt * k2W);
      const double k4H = W + dt * k3W,
                   k4W = laminar_rhs(params, p + dt, H + dt * k3H, W + dt * k3W);
      H += dt / 6.0 * (k1H + 2 * k2H + 2 * k3H + k4H);
      W += dt / 6.0 * (k1W + 2 * k2W + 2 * k3W + k4W);
      p += dt;
      if (!(std::abs(H) < 1e8 && std::abs(W) < 1e8))
        throw BlowUpError("laminar profile blew up during integration");
      if (!(W > 0.5 * HeightField::hp_floor))
        throw StagnationError("H' hit zero during laminar integration");
    }
    H_out(j + 1) = H;
    W_out(j + 1) = W;
  }
}

}  // namespace

LaminarFlow solve_laminar(const WaveParameters& params, const StripGrid& grid,
                          double kappa0) {
  if (!(kappa0 > 0)) throw DomainError("kappa0 must be positive");
  const auto& cheb = *grid.cheb;
  const int np = grid.n_p;
  const VectorXd& p = cheb.nodes();
  const MatrixXd& d1 = cheb.d1();
  const MatrixXd& d2 = cheb.d2();

  VectorXd H, W;
  rk4_predict(params, p, kappa0, H, W);

  VectorXd rho_p(np), beta(np);
  for (int j = 0; j < np; ++j) {
    rho_p(j) = params.rho.eval_derivative(1, p(j));
    beta(j) = params.beta.eval_derivative(0, p(j));
  }

  // Collocation system: value and slope at the bed, interior equation at the
  // interior nodes (matching the rows the 2-d problem imposes).
  auto assemble = [&](const VectorXd& Hc, VectorXd& F, MatrixXd& J) {
    const VectorXd Wc = d1 * Hc;
    F.resize(np);
    J.resize(np, np);
    F(0) = Hc(0);
    J.row(0).setZero();
    J(0, 0) = 1.0;
    F(1) = Wc(0) - kappa0;
    J.row(1) = d1.row(0);
    for (int j = 1; j <= np - 2; ++j) {
      const double w = Wc(j);
      const double coef = params.g * (Hc(j) - params.d) * rho_p(j) - beta(j);
      F(j + 1) = (d2.row(j) * Hc)(0) - coef * w * w * w;
      J.row(j + 1) = d2.row(j) - 3.0 * coef * w * w * d1.row(j);
      J(j + 1, j) -= params.g * rho_p(j) * w * w * w;
    }
  };

  // Iterate to the round-off floor of the collocation operator; the floor
  // grows with n_p, so stop once progress stalls rather than at a fixed tol.
  VectorXd F;
  MatrixXd J;
  VectorXd best_H = H;
  double best_norm = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 0; it < 50; ++it) {
    assemble(H, F, J);
    const double norm = F.cwiseAbs().maxCoeff();
    if (norm < best_norm) {
      best_norm = norm;
      best_H = H;
      stalled = 0;
    } else if (++stalled >= 2) {
      break;
    }
    if (norm <= 1e-13) break;
    VectorXd dH = J.partialPivLu().solve(-F);
    H += dH;
    const VectorXd Wc = d1 * H;
    if (!(Wc.minCoeff() > 0.5 * HeightField::hp_floor))
      throw StagnationError("H' hit zero during laminar collocation solve");
  }
  H = best_H;
  if (best_norm > 1e-9)
    throw DivergenceError("laminar collocation Newton failed", {best_norm});

  // Refine against the residual the 2-d evaluator will report on the
  // replicated field, so the returned flow is a fixed point of that code path.
  {
    Eigen::MatrixXd Hrep(np, grid.n_q);
    VectorXd refined_H = H;
    double refined_norm = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 6; ++it) {
      Hrep = H.replicate(1, grid.n_q);
      auto derivs = detail::field_derivs(grid, Hrep);
      VectorXd r =
          detail::residual_vector(grid, Hrep, derivs, params, /*Q=*/0.0);
      VectorXd F2(np);
      F2(0) = H(0);
      F2(1) = (d1.row(0) * H)(0) - kappa0;
      for (int j = 1; j <= np - 2; ++j) F2(j + 1) = r((j - 1) * grid.n_q);
      const double norm = F2.cwiseAbs().maxCoeff();
      if (norm < refined_norm) {
        refined_norm = norm;
        refined_H = H;
      } else {
        break;
      }
      if (norm <= 1e-14) break;
      assemble(H, F, J);
      H += J.partialPivLu().solve(-F2);
    }
    H = refined_H;
  }

  LaminarFlow lam;
  lam.profile = H;
  lam.slope = d1 * H;
  lam.kappa = kappa0;
  if (!(lam.slope.minCoeff() >= HeightField::hp_floor))
    throw StagnationError("laminar profile violates the h_p floor");
  const double rho0 = params.rho.eval_derivative(0, 0.0);
  const double w0 = lam.slope(np - 1);
  lam.Q = 2.0 * params.g * rho0 * H(np - 1) + 1.0 / (w0 * w0);
  return lam;
}

HeightField laminar_field(const StripGrid& grid, const LaminarFlow& lam) {
  return HeightField(grid, lam.profile.replicate(1, grid.n_q));
}

bool check_no_stagnation(const HeightField& h, double delta) {
  if (!(delta > 0)) throw DomainError("delta must be positive");
  return h.min_hp() > 0.0 && h.max_hp() <= 1.0 / delta;
}

namespace {

VectorXd stack_rows(const Eigen::MatrixXd& H, int nq, int np) {
  VectorXd x((np - 1) * nq);
  for (int j = 1; j <= np - 1; ++j) x.segment((j - 1) * nq, nq) = H.row(j);
  return x;
}

void unstack_rows(const VectorXd& x, Eigen::MatrixXd& H, int nq, int np) {
  for (int j = 1; j <= np - 1; ++j) H.row(j) = x.segment((j - 1) * nq, nq);
}

}  // namespace

NewtonResult newton_solve(const HeightField& h0, const WaveParameters& params,
                          ConstraintMode mode, double amplitude_target,
                          const NewtonOptions& opts) {
  const StripGrid grid = h0.grid();
  const int nq = grid.n_q, np = grid.n_p;
  const int n = (np - 1) * nq;
  const bool with_q = (mode == ConstraintMode::amplitude_pin);
  const int nx = n + (with_q ? 1 : 0) + 1;  // + tau
  const int iq = n;                         // Q slot (if any)
  const int itau = with_q ? n + 1 : n;

  // translation-unfolding column: fixed odd profile
  VectorXd unfold(n);
  for (int j = 1; j <= np - 1; ++j)
    for (int i = 0; i < nq; ++i)
      unfold((j - 1) * nq + i) = std::sin(grid.trig->omega() * grid.q_nodes()(i)) *
                                 (grid.p_nodes()(j) - grid.p0) / (-grid.p0);

  // phase and amplitude functionals act on the surface row block
  VectorXd phase_row = VectorXd::Zero(n), amp_row = VectorXd::Zero(n);
  {
    const auto& tb = *grid.trig;
    for (int i = 0; i < nq; ++i) {
      const double qi = tb.nodes()(i);
      phase_row((np - 2) * nq + i) = (2.0 / nq) * std::sin(tb.omega() * qi);
      amp_row((np - 2) * nq + i) = (2.0 / nq) * std::cos(tb.omega() * qi);
    }
  }

  Eigen::MatrixXd H = h0.values();
  double Q = params.Q;
  double tau = 0.0;

  auto eval_residual = [&](const Eigen::MatrixXd& Hc, double Qc, double tc,
                           VectorXd& ext, double& pde_norm) -> bool {
    auto derivs = detail::field_derivs(grid, Hc);
    if (!(derivs.hp.minCoeff() >= HeightField::hp_floor)) return false;
    WaveParameters pr = params;
    pr.Q = Qc;
    VectorXd r = detail::residual_vector(grid, Hc, derivs, pr, Qc);
    pde_norm = r.cwiseAbs().maxCoeff();
    ext.resize(nx);
    VectorXd hx = stack_rows(Hc, nq, np);
    ext.head(n) = r + tc * unfold;
    int row = n;
    ext(row++) = phase_row.dot(hx);
    if (with_q) ext(row++) = amp_row.dot(hx) - amplitude_target;
    return true;
  };

  VectorXd ext;
  double pde_norm = 0.0;
  if (!eval_residual(H, Q, tau, ext, pde_norm))
    throw StagnationError("initial field violates the h_p floor");

  NewtonResult result{ContinuationState{h0, Q, h0.surface_cos1(), 0, pde_norm},
                      {pde_norm},
                      0,
                      tau};
  std::vector<double>& history = result.residual_history;

  for (int it = 0; it < opts.max_iter; ++it) {
    if (ext.cwiseAbs().maxCoeff() <= opts.tol) break;
    auto derivs = detail::field_derivs(grid, H);
    WaveParameters pr = params;
    pr.Q = Q;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nx, nx);
    A.topLeftCorner(n, n) = detail::jacobian_matrix(grid, H, derivs, pr, Q);
    if (with_q) A.col(iq).head(n) = detail::q_column(grid, derivs);
    A.col(itau).head(n) = unfold;
    A.row(n).head(n) = phase_row;
    if (with_q) A.row(n + 1).head(n) = amp_row;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    {
      const VectorXd du = lu.matrixLU().diagonal().cwiseAbs();
      if (du.minCoeff() <= 1e-14 * du.maxCoeff())
        throw BifurcationError("singular Jacobian in newton_solve");
    }
    VectorXd step = lu.solve(-ext);

    const double base = ext.cwiseAbs().maxCoeff();
    double lambda = 1.0;
    bool accepted = false;
    bool any_valid = false;
    for (int halve = 0; halve <= opts.max_halvings; ++halve) {
      Eigen::MatrixXd Ht = H;
      VectorXd hx = stack_rows(H, nq, np) + lambda * step.head(n);
      unstack_rows(hx, Ht, nq, np);
      const double Qt = with_q ? Q + lambda * step(iq) : Q;
      const double tt = tau + lambda * step(itau);
      VectorXd ext_t;
      double pde_t;
      if (eval_residual(Ht, Qt, tt, ext_t, pde_t)) {
        any_valid = true;
        if (ext_t.cwiseAbs().maxCoeff() <= (1.0 - 1e-4 * lambda) * base) {
          H = Ht;
          Q = Qt;
          tau = tt;
          ext = ext_t;
          pde_norm = pde_t;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      if (!any_valid)
        throw StagnationError(
            "line search could not keep h_p above the floor");
      // take the smallest damped step anyway; divergence is reported below
      VectorXd hx = stack_rows(H, nq, np) + lambda * 2.0 * step.head(n);
      unstack_rows(hx, H, nq, np);
      if (with_q) Q += lambda * 2.0 * step(iq);
      tau += lambda * 2.0 * step(itau);
      if (!eval_residual(H, Q, tau, ext, pde_norm))
        throw StagnationError("stagnation during Newton iteration");
    }
    history.push_back(pde_norm);
    result.iterations = it + 1;
  }

  if (ext.cwiseAbs().maxCoeff() > opts.tol)
    throw DivergenceError("newton_solve did not reach tolerance", history);

  HeightField h(grid, H);
  result.state = ContinuationState{h, Q, h.surface_cos1(), 0, pde_norm};
  result.tau = tau;
  return result;
}

namespace {

struct ShootState {
  double H, W, psi, chi;
};

// D(kappa): surface defect of the laminar linearization kernel candidate.
double dispersion_defect(const WaveParameters& params, double kappa, double K,
                         double* out_scale = nullptr) {
  const int steps = 4000;
  const double dp = (0.0 - params.p0) / steps;
  ShootState s{0.0, kappa, 0.0, 1.0};
  auto rhs = [&](double p, const ShootState& y) -> ShootState {
    const double rp = params.rho.eval_derivative(1, p);
    const double b = params.beta.eval_derivative(0, p);
    const double wp = (params.g * (y.H - params.d) * rp - b) * y.W * y.W * y.W;
    ShootState d;
    d.H = y.W;
    d.W = wp;
    d.psi = y.chi;
    d.chi = K * K * y.W * y.W * y.psi + 3.0 * (wp / y.W) * y.chi +
            params.g * rp * y.W * y.W * y.W * y.psi;
    return d;
  };
  double p = params.p0;
  for (int i = 0; i < steps; ++i) {
    auto add = [](const ShootState& a, const ShootState& b, double f) {
      return ShootState{a.H + f * b.H, a.W + f * b.W, a.psi + f * b.psi,
                        a.chi + f * b.chi};
    };
    const ShootState k1 = rhs(p, s);
    const ShootState k2 = rhs(p + 0.5 * dp, add(s, k1, 0.5 * dp));
    const ShootState k3 = rhs(p + 0.5 * dp, add(s, k2, 0.5 * dp));
    const ShootState k4 = rhs(p + dp, add(s, k3, dp));
    s.H += dp / 6.0 * (k1.H + 2 * k2.H + 2 * k3.H + k4.H);
    s.W += dp / 6.0 * (k1.W + 2 * k2.W + 2 * k3.W + k4.W);
    s.psi += dp / 6.0 * (k1.psi + 2 * k2.psi + 2 * k3.psi + k4.psi);
    s.chi += dp / 6.0 * (k1.chi + 2 * k2.chi + 2 * k3.chi + k4.chi);
    p += dp;
    if (!(s.W > 1e-9) || !std::isfinite(s.psi) || std::abs(s.psi) > 1e12)
      return std::numeric_limits<double>::quiet_NaN();
  }
  const double rho0 = params.rho.eval_derivative(0, 0.0);
  const double robin = s.W * s.W * s.W * (params.g * rho0 + params.sigma * K * K);
  if (out_scale) *out_scale = std::abs(s.chi) + std::abs(robin * s.psi);
  return s.chi - robin * s.psi;
}

}  // namespace

double find_bifurcation_kappa(const WaveParameters& params,
                              const StripGrid& grid, int mode_index,
                              std::pair<double, double> kappa_range) {
  const double K = mode_index * 2.0 * M_PI / params.lambda;
  const int scan = 96;
  double prev_kappa = std::numeric_limits<double>::quiet_NaN();
  double prev_val = std::numeric_limits<double>::quiet_NaN();
  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (int i = 0; i <= scan; ++i) {
    const double kappa =
        kappa_range.first +
        (kappa_range.second - kappa_range.first) * i / double(scan);
    const double v = dispersion_defect(params, kappa, K);
    if (std::isfinite(v) && std::isfinite(prev_val) && prev_val * v <= 0.0) {
      lo = prev_kappa;
      hi = kappa;
      found = true;
      break;
    }
    prev_kappa = kappa;
    prev_val = v;
  }
  if (!found)
    throw BifurcationError(
        "no laminar bifurcation for this wavelength inside kappa_range");
  double flo = dispersion_defect(params, lo, K);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = dispersion_defect(params, mid, K);
    if (!std::isfinite(fm)) throw BifurcationError("dispersion scan failed");
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-14 * std::max(1.0, std::abs(hi))) break;
  }
  (void)grid;
  return 0.5 * (lo + hi);
}

VectorXd laminar_kernel_profile(const WaveParameters& params,
                                const StripGrid& grid, const LaminarFlow& lam,
                                int mode_index) {
  const auto& cheb = *grid.cheb;
  const int np = grid.n_p;
  const double K = mode_index * 2.0 * M_PI / params.lambda;
  const MatrixXd& d1 = cheb.d1();
  const MatrixXd& d2 = cheb.d2();
  MatrixXd A = MatrixXd::Zero(np, np);
  VectorXd rhs = VectorXd::Zero(np);
  A(0, 0) = 1.0;  // psi(p0) = 0
  for (int j = 1; j <= np - 2; ++j) {
    const double p = cheb.nodes()(j);
    const double w = lam.slope(j);
    const double rp = params.rho.eval_derivative(1, p);
    const double b = params.beta.eval_derivative(0, p);
    const double wp = (params.g * (lam.profile(j) - params.d) * rp - b) * w * w * w;
    A.row(j) = d2.row(j) - 3.0 * (wp / w) * d1.row(j);
    A(j, j) -= K * K * w * w + params.g * rp * w * w * w;
  }
  A(np - 1, np - 1) = 1.0;  // normalization psi(0) = 1
  rhs(np - 1) = 1.0;
  return A.partialPivLu().solve(rhs);
}

ContinuationResult continuation_run(const WaveParameters& params,
                                    const StripGrid& grid,
                                    const std::vector<double>& targets,
                                    const ContinuationOptions& opts) {
  for (size_t i = 0; i + 1 < targets.size(); ++i)
    if (!(targets[i] < targets[i + 1]))
      throw DomainError("amplitude targets must be increasing");
  ContinuationResult out;
  out.kappa_star =
      find_bifurcation_kappa(params, grid, opts.mode_index, opts.kappa_range);
  out.base = solve_laminar(params, grid, out.kappa_star);
  const VectorXd psi =
      laminar_kernel_profile(params, grid, out.base, opts.mode_index);
  const double K = opts.mode_index * 2.0 * M_PI / params.lambda;

  WaveParameters pr = params;
  pr.Q = out.base.Q;

  // previous two branch points for the secant predictor, as (amplitude, H, Q)
  struct Point {
    double a;
    Eigen::MatrixXd H;
    double Q;
  };
  Point prev{0.0, out.base.profile.replicate(1, grid.n_q), out.base.Q};
  bool have_two = false;
  Point prev2 = prev;

  auto predict = [&](double a) -> std::pair<Eigen::MatrixXd, double> {
    if (!have_two) {
      Eigen::MatrixXd H = prev.H;
      for (int j = 0; j < grid.n_p; ++j)
        for (int i = 0; i < grid.n_q; ++i)
          H(j, i) += (a - prev.a) * psi(j) * std::cos(K * grid.q_nodes()(i));
      return {H, prev.Q};
    }
    const double t = (a - prev.a) / (prev.a - prev2.a);
    return {prev.H + t * (prev.H - prev2.H), prev.Q + t * (prev.Q - prev2.Q)};
  };

  int step_index = 0;
  for (double target : targets) {
    double reached = prev.a;
    int bisections = 0;
    double attempt = target;
    while (true) {
      auto [Hp, Qp] = predict(attempt);
      bool ok = false;
      try {
        HeightField hp(grid, Hp);
        pr.Q = Qp;
        NewtonResult nr = newton_solve(hp, pr, ConstraintMode::amplitude_pin,
                                       attempt, opts.newton);
        prev2 = prev;
        have_two = true;
        prev = Point{attempt, nr.state.h.values(), nr.state.Q};
        reached = attempt;
        ok = true;
        if (attempt == target) {
          ContinuationState st = nr.state;
          st.step_count = step_index++;
          out.states.push_back(std::move(st));
        }
      } catch (const Error&) {
        ok = false;
      }
      if (ok) {
        if (attempt == target) break;
        attempt = target;  // continue toward the target from the new point
      } else {
        if (++bisections > opts.max_bisections) {
          out.aborted = true;
          out.abort_reason = "amplitude step kept failing after " +
                             std::to_string(opts.max_bisections) +
                             " bisections";
          return out;
        }
        attempt = 0.5 * (reached + attempt);
      }
    }
  }
  return out;
}

}  // namespace strata
