// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/ode_oracle.hpp"
#include "strata/errors.hpp"
#include "strata/solver.hpp"

using namespace strata;

namespace {

WaveParameters make_params(double g, double sigma, double d, double p0,
                           CoefficientFunction rho, CoefficientFunction beta,
                           double lambda = 2.0 * M_PI) {
  return WaveParameters(g, sigma, 0.0, d, std::move(rho), std::move(beta),
                        lambda, p0);
}

WaveParameters const_params(double g = 1.0, double sigma = 0.0,
                            double p0 = -1.0, double d = 1.0) {
  return make_params(g, sigma, d, p0,
                     CoefficientFunction::make_constant(1.0, p0),
                     CoefficientFunction::make_constant(0.0, p0));
}

}  // namespace

TEST_CASE("laminar with zero vorticity is the exact linear profile") {
  StripGrid grid(16, 32, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.0);
  for (int j = 0; j < grid.n_p; ++j) {
    CHECK(std::abs(lam.profile(j) - (grid.p_nodes()(j) + 1.0)) < 1e-12);
    CHECK(std::abs(lam.slope(j) - 1.0) < 1e-12);
  }
  CHECK(std::abs(lam.Q - 3.0) < 5e-13);  // -2 g p0 kappa + kappa^-2
}

TEST_CASE("laminar with constant vorticity matches the separable closed form") {
  // H' = (kappa^-2 + 2 b (p - p0))^(-1/2)
  const double b = 0.4, kappa = 1.1, p0 = -1.0;
  StripGrid grid(16, 32, 2.0 * M_PI, p0);
  auto params = make_params(1.0, 0.0, 1.0, p0,
                            CoefficientFunction::make_constant(1.0, p0),
                            CoefficientFunction::make_constant(b, p0));
  LaminarFlow lam = solve_laminar(params, grid, kappa);
  for (int j = 0; j < grid.n_p; ++j) {
    const double t = grid.p_nodes()(j) - p0;
    const double slope = 1.0 / std::sqrt(1.0 / (kappa * kappa) + 2.0 * b * t);
    const double profile =
        (std::sqrt(1.0 / (kappa * kappa) + 2.0 * b * t) - 1.0 / kappa) / b;
    CHECK(std::abs(lam.slope(j) - slope) < 1e-10);
    CHECK(std::abs(lam.profile(j) - profile) < 1e-10);
  }
}

TEST_CASE("stratified laminar matches the adaptive RKF78 oracle") {
  const double p0 = -1.0;
  StripGrid grid(16, 32, 2.0 * M_PI, p0);
  auto params = make_params(
      1.0, 0.0, 1.0, p0,
      CoefficientFunction(CoefficientFunction::Kind::polynomial, {1.0, -0.1},
                          p0),
      CoefficientFunction::make_constant(0.3, p0));
  LaminarFlow lam = solve_laminar(params, grid, 1.0);

  oracle::LaminarOde ode{[](double) { return -0.1; },
                         [](double) { return 0.3; },
                         1.0,
                         1.0};
  std::vector<double> pts(grid.p_nodes().data(),
                          grid.p_nodes().data() + grid.n_p);
  auto ref = oracle::laminar_reference(ode, p0, 1.0, pts);
  for (int j = 0; j < grid.n_p; ++j)
    CHECK(std::abs(lam.profile(j) - ref[j][0]) < 1e-10);
}

TEST_CASE("laminar failure modes") {
  StripGrid grid(16, 24, 2.0 * M_PI, -1.0);
  // strong positive vorticity drives H' to zero: kappa^-2 + 2b(p-p0) with
  // b < -kappa^-2/2 crosses zero inside the strip
  auto params = make_params(1.0, 0.0, 1.0, -1.0,
                            CoefficientFunction::make_constant(1.0, -1.0),
                            CoefficientFunction::make_constant(-0.9, -1.0));
  CHECK_THROWS_AS(solve_laminar(params, grid, 1.0), Error);
}

TEST_CASE("newton from the exact laminar converges immediately") {
  StripGrid grid(32, 20, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.0);
  HeightField h0 = laminar_field(grid, lam);
  params.Q = lam.Q;
  NewtonResult res = newton_solve(h0, params, ConstraintMode::q_fixed, 0.0);
  CHECK(res.iterations <= 1);
  CHECK(res.state.residual_norm <= 1e-10);
  CHECK((res.state.h.values() - h0.values()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("newton pulls a random smooth perturbation back to laminar") {
  // kappa away from the critical point of Q(kappa) (dQ/dkappa = 0 at
  // kappa = 1 for these parameters), so the laminar root is simple
  StripGrid grid(64, 32, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.3);
  HeightField base = laminar_field(grid, lam);
  params.Q = lam.Q;

  for (unsigned seed : {3u, 17u}) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::MatrixXd pert = Eigen::MatrixXd::Zero(grid.n_p, grid.n_q);
    for (int k = 0; k <= 4; ++k) {
      const double ac = noise(rng), as = noise(rng);
      for (int j = 1; j < grid.n_p; ++j)
        for (int i = 0; i < grid.n_q; ++i) {
          const double pm = (grid.p_nodes()(j) - grid.p0) / (-grid.p0);
          const double q = grid.q_nodes()(i);
          pert(j, i) +=
              (ac * std::cos(k * q) + as * std::sin(k * q)) * pm * pm;
        }
    }
    pert *= 1e-3 / pert.cwiseAbs().maxCoeff();
    HeightField h0(grid, base.values() + pert);
    NewtonResult res = newton_solve(h0, params, ConstraintMode::q_fixed, 0.0);
    CHECK(res.state.residual_norm <= 1e-10);
    CHECK((res.state.h.values() - base.values()).cwiseAbs().maxCoeff() <=
          1e-9);
    // laminar solutions stay q-independent to round-off
    for (int j = 0; j < grid.n_p; ++j) {
      const auto row = res.state.h.values().row(j);
      CHECK(row.maxCoeff() - row.minCoeff() < 1e-10);
    }
  }
}

TEST_CASE("quadratic convergence tail from a visible perturbation") {
  StripGrid grid(64, 32, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.3);
  HeightField base = laminar_field(grid, lam);
  params.Q = lam.Q;
  Eigen::MatrixXd pert = Eigen::MatrixXd::Zero(grid.n_p, grid.n_q);
  for (int j = 1; j < grid.n_p; ++j)
    for (int i = 0; i < grid.n_q; ++i) {
      const double pm = (grid.p_nodes()(j) - grid.p0) / (-grid.p0);
      pert(j, i) = 5e-2 * std::cos(2 * grid.q_nodes()(i)) * pm * pm;
    }
  NewtonOptions opts;
  opts.tol = 1e-10;  // the residual evaluation floor sits near 6e-11 here
  HeightField h0(grid, base.values() + pert);
  NewtonResult res = newton_solve(h0, params, ConstraintMode::q_fixed, 0.0, opts);
  const auto& hist = res.residual_history;
  REQUIRE(hist.size() >= 3);
  // r_{k+1} <= C r_k^2 over the tail above the round-off floor
  int quadratic_pairs = 0;
  for (size_t k = 0; k + 1 < hist.size(); ++k) {
    if (hist[k] < 1e-2 && hist[k + 1] > 1e-9) {
      CHECK(hist[k + 1] <= 50.0 * hist[k] * hist[k]);
      ++quadratic_pairs;
    }
  }
  CHECK(quadratic_pairs >= 1);
}

TEST_CASE("no-stagnation check reads off the slope range") {
  StripGrid grid(16, 12, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.0);
  HeightField h = laminar_field(grid, lam);
  CHECK(check_no_stagnation(h, 0.5));    // h_p = 1 <= 2
  CHECK(!check_no_stagnation(h, 1.5));   // 1 > 1/1.5
}

TEST_CASE("dispersion root for constant density matches the closed form") {
  // g kappa^2 tanh(kappa |p0|) = k at g = 1, k = 1, p0 = -1
  auto params = const_params();
  StripGrid grid(16, 24, 2.0 * M_PI, -1.0);
  const double kappa =
      find_bifurcation_kappa(params, grid, 1, {0.3, 4.0});
  auto relation = [&](double x) { return x * x * std::tanh(x) - 1.0; };
  CHECK(std::abs(relation(kappa)) < 1e-9);
}

TEST_CASE("no bifurcation inside the range is reported") {
  auto params = const_params();
  StripGrid grid(16, 24, 2.0 * M_PI, -1.0);
  CHECK_THROWS_AS(find_bifurcation_kappa(params, grid, 1, {3.0, 4.0}),
                  BifurcationError);
}

TEST_CASE("continuation produces small-amplitude gravity waves") {
  auto params = const_params();
  StripGrid grid(64, 32, 2.0 * M_PI, -1.0);
  ContinuationOptions opts;
  opts.kappa_range = {0.5, 3.0};

  SUBCASE("target zero returns the laminar state") {
    auto res = continuation_run(params, grid, {0.0}, opts);
    REQUIRE(res.states.size() == 1);
    CHECK(std::abs(res.states[0].amplitude) < 1e-12);
    CHECK(std::abs(res.states[0].Q - res.base.Q) < 1e-10);
  }

  SUBCASE("stokes ordering and quadratic Q shift") {
    auto res = continuation_run(params, grid, {1e-3, 2e-3, 4e-3}, opts);
    REQUIRE(res.states.size() == 3);
    for (const auto& st : res.states) {
      CHECK(st.residual_norm <= 1e-10);
      CHECK(st.h.min_hp() > HeightField::hp_floor);
      // amplitude bookkeeping matches the measured first cosine mode
      CHECK(std::abs(st.amplitude - st.h.surface_cos1()) < 1e-10);
      CHECK(std::abs(st.h.surface_sin1()) < 1e-10);
    }
    // second harmonic of the surface trace is O(a^2)
    for (const auto& st : res.states) {
      const VectorXd amps = grid.trig->mode_amplitudes(st.h.surface_trace());
      CHECK(amps(2) <= 30.0 * st.amplitude * st.amplitude);
    }
    // quadratic fit of Q(a): the linear coefficient vanishes
    // (branch symmetric under a -> -a)
    const double a1 = res.states[0].amplitude, a2 = res.states[1].amplitude,
                 a3 = res.states[2].amplitude;
    const double q0 = res.base.Q;
    Eigen::Matrix3d M;
    M << a1, a1 * a1, 0, a2, a2 * a2, 0, a3, a3 * a3, 0;
    M.col(2).setOnes();
    Eigen::Vector3d rhs(res.states[0].Q - q0, res.states[1].Q - q0,
                        res.states[2].Q - q0);
    Eigen::Vector3d coef = M.fullPivLu().solve(rhs);
    CHECK(std::abs(coef(0)) < 1e-6);   // linear term
    CHECK(std::abs(coef(2)) < 1e-7);   // offset: Q(0) recovered
  }
}

TEST_CASE("solved wave changes by <= 1e-8 under grid doubling" *
          doctest::skip(false)) {
  auto params = const_params();
  const double amp = 1e-2;
  StripGrid coarse(64, 32, 2.0 * M_PI, -1.0);
  StripGrid fine(128, 64, 2.0 * M_PI, -1.0);
  ContinuationOptions opts;
  opts.kappa_range = {0.5, 3.0};
  auto res_c = continuation_run(params, coarse, {amp / 2, amp}, opts);
  ContinuationOptions fine_opts = opts;
  fine_opts.newton.tol = 5e-9;  // residual evaluation floor grows ~n_p^4
  auto res_f = continuation_run(params, fine, {amp / 2, amp}, fine_opts);
  REQUIRE(res_c.states.size() == 2);
  REQUIRE(res_f.states.size() == 2);
  const auto& hc = res_c.states[1].h;
  const auto& hf = res_f.states[1].h;
  // compare on the coarse nodes (coarse q nodes are every other fine node)
  double worst = 0.0;
  for (int j = 0; j < coarse.n_p; ++j) {
    const VectorXd w = fine.cheb->interpolation_weights(coarse.p_nodes()(j));
    for (int i = 0; i < coarse.n_q; ++i) {
      const double vf = w.dot(hf.values().col(2 * i));
      worst = std::max(worst, std::abs(vf - hc.values()(j, i)));
    }
  }
  CHECK(worst <= 1e-8);
  CHECK(std::abs(res_c.states[1].Q - res_f.states[1].Q) <= 1e-9);
}
