// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "strata/errors.hpp"
#include "strata/strip.hpp"

using namespace strata;

namespace {

WaveParameters simple_params(double g = 1.0, double sigma = 0.0,
                             double Q = 3.0, double d = 1.0,
                             double p0 = -1.0) {
  return WaveParameters(g, sigma, Q, d,
                        CoefficientFunction::make_constant(1.0, p0),
                        CoefficientFunction::make_constant(0.0, p0),
                        2.0 * M_PI, p0);
}

HeightField perturbed_laminar(const StripGrid& g, double kappa, double eps) {
  Eigen::MatrixXd h(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j)
    for (int i = 0; i < g.n_q; ++i)
      h(j, i) = (kappa + eps * std::cos(g.q_nodes()(i))) *
                (g.p_nodes()(j) - g.p0);
  return HeightField(g, std::move(h));
}

}  // namespace

TEST_CASE("height field invariants") {
  StripGrid g(16, 12, 2.0 * M_PI, -1.0);
  SUBCASE("nonzero bed row is rejected") {
    Eigen::MatrixXd h = Eigen::MatrixXd::Ones(12, 16);
    CHECK_THROWS_AS(HeightField(g, h), DomainError);
  }
  SUBCASE("stagnation is rejected") {
    Eigen::MatrixXd h(12, 16);
    for (int j = 0; j < 12; ++j)
      h.row(j).setConstant(0.0);  // h identically 0: h_p = 0
    CHECK_THROWS_AS(HeightField(g, h), StagnationError);
  }
  SUBCASE("a laminar profile passes") {
    Eigen::MatrixXd h(12, 16);
    for (int j = 0; j < 12; ++j) h.row(j).setConstant(g.p_nodes()(j) + 1.0);
    HeightField hf(g, h);
    CHECK(hf.min_hp() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(hf.max_hp() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("laminar h = p - p0 has vanishing interior residual") {
  StripGrid g(32, 24, 2.0 * M_PI, -1.0);
  Eigen::MatrixXd h(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j) h.row(j).setConstant(g.p_nodes()(j) + 1.0);
  HeightField hf(g, std::move(h));
  auto params = simple_params();
  // mathematically zero; the bound is spectral differentiation round-off
  CHECK(interior_residual(hf, params).cwiseAbs().maxCoeff() < 5e-11);
  // Q = -2 g p0 kappa + kappa^-2 = 3 makes the surface residual vanish
  CHECK(surface_residual(hf, params).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("perturbed laminar interior residual matches the hand expansion") {
  // h = (kappa + eps cos q)(p - p0), beta = 0, rho = 1:
  //   residual = -(p - p0) eps [ 2 P eps sin^2 q + P^2 cos q ],  P = kappa+eps cos q
  const double kappa = 1.0, eps = 0.1;
  StripGrid g(48, 24, 2.0 * M_PI, -1.0);
  HeightField hf = perturbed_laminar(g, kappa, eps);
  WaveParameters params = simple_params(0.0, 0.07, 3.0);  // g=0 kills rho_p term
  auto res = interior_residual(hf, params);
  for (int j = 1; j <= g.n_p - 2; ++j)
    for (int i = 0; i < g.n_q; ++i) {
      const double q = g.q_nodes()(i), pm = g.p_nodes()(j) - g.p0;
      const double P = kappa + eps * std::cos(q);
      const double expect =
          -pm * eps *
          (2.0 * P * eps * std::sin(q) * std::sin(q) + P * P * std::cos(q));
      CHECK(res(j - 1, i) == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("perturbed surface residual matches the closed form with tension") {
  const double kappa = 1.0, eps = 0.05, sigma = 0.07, grav = 1.0, Q = 2.9;
  StripGrid g(48, 24, 2.0 * M_PI, -1.0);
  HeightField hf = perturbed_laminar(g, kappa, eps);
  WaveParameters params = simple_params(grav, sigma, Q);
  auto res = surface_residual(hf, params);
  const double pm = -g.p0;
  for (int i = 0; i < g.n_q; ++i) {
    const double q = g.q_nodes()(i);
    const double hv = (kappa + eps * std::cos(q)) * pm;
    const double hq = -eps * std::sin(q) * pm;
    const double hp = kappa + eps * std::cos(q);
    const double hqq = -eps * std::cos(q) * pm;
    const double curv = hqq / std::pow(1.0 + hq * hq, 1.5);
    const double expect =
        1.0 + hq * hq + (2.0 * grav * hv - 2.0 * sigma * curv - Q) * hp * hp;
    CHECK(res(i) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("flat surface: tension does not change the residual") {
  StripGrid g(16, 12, 2.0 * M_PI, -1.0);
  Eigen::MatrixXd h(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j) h.row(j).setConstant(g.p_nodes()(j) + 1.0);
  HeightField hf(g, std::move(h));
  auto without = surface_residual(hf, simple_params(1.0, 0.0));
  auto with = surface_residual(hf, simple_params(1.0, 0.25));
  CHECK((without - with).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("curvature term") {
  StripGrid g(64, 12, 2.0 * M_PI, -1.0);
  SUBCASE("flat row gives zero") {
    Eigen::MatrixXd h(g.n_p, g.n_q);
    for (int j = 0; j < g.n_p; ++j) h.row(j).setConstant(g.p_nodes()(j) + 1.0);
    CHECK(curvature_term(HeightField(g, h)).cwiseAbs().maxCoeff() < 5e-13);
  }
  SUBCASE("cosine surface trace") {
    // surface trace eta = 0.2 cos q on top of a laminar profile
    Eigen::MatrixXd h(g.n_p, g.n_q);
    for (int j = 0; j < g.n_p; ++j)
      for (int i = 0; i < g.n_q; ++i) {
        const double pm = g.p_nodes()(j) + 1.0;
        h(j, i) = pm + 0.2 * std::cos(g.q_nodes()(i)) * pm;
      }
    const VectorXd c = curvature_term(HeightField(g, h));
    // at q = 0: h_q = 0, h_qq = -0.2 -> curvature = -0.2
    CHECK(c(0) == doctest::Approx(-0.2).epsilon(1e-10));
    // at q = pi/2 (index n_q/4): h_q = -0.2, h_qq = 0 -> 0
    CHECK(c(g.n_q / 4) == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("ellipticity witness: (1+hq^2)hp^2 - (hq hp)^2 = hp^2 > 0") {
  StripGrid g(32, 16, 2.0 * M_PI, -1.0);
  HeightField hf = perturbed_laminar(g, 1.0, 0.2);
  for (int j = 0; j < g.n_p; ++j)
    for (int i = 0; i < g.n_q; ++i) {
      const double hq = hf.hq()(j, i), hp = hf.hp()(j, i);
      const double witness = (1.0 + hq * hq) * hp * hp - hq * hq * hp * hp;
      CHECK(witness == doctest::Approx(hp * hp).epsilon(1e-12));
      CHECK(witness >= hf.min_hp() * hf.min_hp() * (1.0 - 1e-12));
    }
}

TEST_CASE("linearize matches directional finite differences") {
  StripGrid g(24, 16, 2.0 * M_PI, -1.0);
  HeightField hf = perturbed_laminar(g, 1.0, 0.05);
  WaveParameters params(1.0, 0.07, 2.8, 1.0,
                        CoefficientFunction(CoefficientFunction::Kind::polynomial,
                                            {1.0, -0.1}, -1.0),
                        CoefficientFunction::make_constant(0.2, -1.0),
                        2.0 * M_PI, -1.0);
  auto op = linearize(hf, params, true);

  std::mt19937 rng(11);
  std::normal_distribution<double> noise(0.0, 1.0);
  // smooth random direction: a few low modes, vanishing on the bed
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(g.n_p, g.n_q);
  for (int k = 0; k <= 3; ++k) {
    const double ac = noise(rng), as = noise(rng), bp = noise(rng);
    for (int j = 1; j < g.n_p; ++j)
      for (int i = 0; i < g.n_q; ++i) {
        const double q = g.q_nodes()(i);
        const double pm = (g.p_nodes()(j) - g.p0) / (-g.p0);
        phi(j, i) += (ac * std::cos(k * q) + as * std::sin(k * q)) *
                     std::pow(pm, 1 + (k + 1) % 2) * (1.0 + 0.3 * bp * pm);
      }
  }
  phi *= 0.5 / phi.cwiseAbs().maxCoeff();
  const double dQ = 0.3;

  auto stack_residual = [&](const HeightField& h, double Q) {
    WaveParameters p2 = params;
    p2.Q = Q;
    detail::FieldDerivs d{h.hq(), h.hp(), h.hpp(), h.hpq(), h.hqq()};
    return detail::residual_vector(g, h.values(), d, p2, Q);
  };

  const VectorXd lin = op.apply(phi, dQ);
  double err_prev = 0.0;
  int idx = 0;
  for (double eps : {1e-3, 1e-4}) {
    HeightField hp(g, hf.values() + eps * phi);
    HeightField hm(g, hf.values() - eps * phi);
    const VectorXd fd = (stack_residual(hp, params.Q + eps * dQ) -
                         stack_residual(hm, params.Q - eps * dQ)) /
                        (2.0 * eps);
    const double err = (fd - lin).cwiseAbs().maxCoeff();
    if (idx == 0) {
      err_prev = err;
    } else {
      // central differences: error drops by ~100 per decade of eps
      CHECK(err < err_prev / 25.0);
      CHECK(err / lin.cwiseAbs().maxCoeff() < 1e-5);
    }
    ++idx;
  }
}

TEST_CASE("linearize at laminar separates into Fourier modes") {
  // beta = 0, rho = 1: interior action on cos(kq) v(p) is cos(kq)(v'' - k^2 kappa^2 v)
  const double kappa = 1.3;
  StripGrid g(32, 20, 2.0 * M_PI, -1.0);
  Eigen::MatrixXd h(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j)
    h.row(j).setConstant(kappa * (g.p_nodes()(j) + 1.0));
  HeightField hf(g, std::move(h));
  auto params = simple_params(1.0, 0.0, -2.0 * 1.0 * (-1.0) * kappa + 1.0 / (kappa * kappa));
  auto op = linearize(hf, params, false);

  const int k = 3;
  VectorXd v(g.n_p), vpp(g.n_p);
  for (int j = 0; j < g.n_p; ++j) {
    const double t = g.p_nodes()(j) + 1.0;
    v(j) = std::sin(M_PI * t);             // vanishes on the bed
    vpp(j) = -M_PI * M_PI * std::sin(M_PI * t);
  }
  Eigen::MatrixXd phi(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j)
    for (int i = 0; i < g.n_q; ++i)
      phi(j, i) = v(j) * std::cos(k * g.q_nodes()(i));
  const VectorXd out = op.apply(phi, 0.0);
  for (int j = 1; j <= g.n_p - 2; ++j)
    for (int i = 0; i < g.n_q; ++i) {
      const double expect = (vpp(j) - k * k * kappa * kappa * v(j)) *
                            std::cos(k * g.q_nodes()(i));
      CHECK(out((j - 1) * g.n_q + i) ==
            doctest::Approx(expect).epsilon(5e-6));
    }
}

TEST_CASE("spectral consistency: d2 in q equals two d1 applications") {
  StripGrid g(64, 12, 2.0 * M_PI, -1.0);
  HeightField hf = perturbed_laminar(g, 1.0, 0.1);
  const Eigen::MatrixXd once = hf.values() * g.trig->d2().transpose();
  const Eigen::MatrixXd twice =
      (hf.values() * g.trig->d1().transpose()) * g.trig->d1().transpose();
  CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-9);
}
