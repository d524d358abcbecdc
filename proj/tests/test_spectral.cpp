// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "strata/spectral.hpp"

using namespace strata;

TEST_CASE("trig derivative is exact on band-limited fields") {
  TrigBasis tb(64, 2.0 * M_PI);
  VectorXd f(64), df(64), d2f(64);
  for (int i = 0; i < 64; ++i) {
    const double q = tb.nodes()(i);
    f(i) = std::cos(3 * q) + 0.5 * std::sin(5 * q);
    df(i) = -3 * std::sin(3 * q) + 2.5 * std::cos(5 * q);
    d2f(i) = -9 * std::cos(3 * q) - 12.5 * std::sin(5 * q);
  }
  CHECK((tb.derivative(f, 1) - df).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((tb.derivative(f, 2) - d2f).cwiseAbs().maxCoeff() < 1e-11);
  // matrices agree with the multiplier route
  CHECK((tb.d1() * f - df).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((tb.d2() * f - d2f).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("trig matrices send constants to (near-exact) zero") {
  TrigBasis tb(32, 3.0);
  const VectorXd c = VectorXd::Constant(32, 4.7);
  // row sums are pinned to zero; what remains is re-evaluation round-off
  CHECK((tb.d1() * c).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((tb.d2() * c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("d2 equals two applications of d1 on band-limited fields") {
  TrigBasis tb(64, 2.0 * M_PI);
  VectorXd f(64);
  for (int i = 0; i < 64; ++i) f(i) = std::exp(std::cos(tb.nodes()(i)));
  const VectorXd twice = tb.d1() * (tb.d1() * f);
  const VectorXd once = tb.d2() * f;
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("wavelength scaling enters the multipliers") {
  const double lam = 4.0;
  TrigBasis tb(32, lam);
  const double w = 2.0 * M_PI / lam;
  VectorXd f(32);
  for (int i = 0; i < 32; ++i) f(i) = std::sin(w * tb.nodes()(i));
  VectorXd df(32);
  for (int i = 0; i < 32; ++i) df(i) = w * std::cos(w * tb.nodes()(i));
  CHECK((tb.derivative(f, 1) - df).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("chebyshev nodes are ascending and endpoint-inclusive") {
  ChebBasis cb(16, -0.7);
  CHECK(cb.nodes()(0) == -0.7);
  CHECK(cb.nodes()(15) == 0.0);
  for (int j = 0; j + 1 < 16; ++j) CHECK(cb.nodes()(j) < cb.nodes()(j + 1));
}

TEST_CASE("chebyshev differentiation: linear profile is exact") {
  ChebBasis cb(32, -1.0);
  const VectorXd h = cb.nodes().array() + 1.0;
  CHECK((cb.d1() * h - VectorXd::Ones(32)).cwiseAbs().maxCoeff() < 5e-13);
  CHECK((cb.d2() * h).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((cb.derivative(h, 1) - VectorXd::Ones(32)).cwiseAbs().maxCoeff() <
        1e-11);
}

TEST_CASE("chebyshev differentiation matches analytic derivatives") {
  ChebBasis cb(32, -1.0);
  VectorXd f(32), d1(32), d2(32);
  for (int j = 0; j < 32; ++j) {
    const double p = cb.nodes()(j);
    f(j) = std::exp(p) * std::sin(2 * p);
    d1(j) = std::exp(p) * (std::sin(2 * p) + 2 * std::cos(2 * p));
    d2(j) = std::exp(p) * (-3 * std::sin(2 * p) + 4 * std::cos(2 * p));
  }
  CHECK((cb.d1() * f - d1).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((cb.d2() * f - d2).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((cb.derivative(f, 2) - d2).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("barycentric interpolation hits nodes and mid-points") {
  ChebBasis cb(24, -2.0);
  VectorXd f(24);
  for (int j = 0; j < 24; ++j) f(j) = std::cos(3.0 * cb.nodes()(j));
  CHECK(cb.interpolate(f, cb.nodes()(5)) == f(5));
  const double p = -0.773;
  CHECK(cb.interpolate(f, p) ==
        doctest::Approx(std::cos(3.0 * p)).epsilon(1e-10));
  const VectorXd w = cb.interpolation_weights(p);
  CHECK(w.dot(f) == doctest::Approx(cb.interpolate(f, p)).epsilon(1e-14));
}
