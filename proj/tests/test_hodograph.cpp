// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles/shared_states.hpp"
#include "strata/errors.hpp"
#include "strata/hodograph.hpp"
#include "strata/solver.hpp"

using namespace strata;
using shared::const_params;

TEST_CASE("laminar surface is flat at y = 0 when d matches the depth") {
  StripGrid grid(32, 20, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.0);
  HeightField h = laminar_field(grid, lam);
  auto eta = reconstruct_surface(h, 1.0);
  for (double y : eta.y) CHECK(std::abs(y) < 1e-12);

  SUBCASE("interior streamline of the laminar flow is flat") {
    auto mid = streamline(h, -0.5, 1.0);
    for (double y : mid.y) CHECK(y == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("bed streamline sits at y = -d") {
    auto bed = streamline(h, grid.p0, 1.0);
    for (double y : bed.y) CHECK(y == doctest::Approx(-1.0).epsilon(1e-14));
  }
  SUBCASE("p_level outside the strip is a domain error") {
    CHECK_THROWS_AS(streamline(h, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(streamline(h, -1.5, 1.0), DomainError);
  }
}

TEST_CASE("laminar velocity: u = c - 1/(sqrt(rho) h_p), v = 0") {
  StripGrid grid(16, 16, 2.0 * M_PI, -1.0);
  auto params = const_params();
  LaminarFlow lam = solve_laminar(params, grid, 1.0);
  HeightField h = laminar_field(grid, lam);
  auto vel = velocity_field(h, params.rho, 2.0, 1.0);
  CHECK((vel.u.array() - 1.0).abs().maxCoeff() < 1e-11);
  CHECK(vel.v.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("laminar psi is the linear map -(y + d + p0)") {
  StripGrid grid(16, 20, 2.0 * M_PI, -1.0);
  auto params = const_params();
  HeightField h = laminar_field(grid, solve_laminar(params, grid, 1.0));
  const double d = 1.0;
  for (double y : {-0.9, -0.5, -0.2, -0.05}) {
    const double psi = psi_at(h, d, 0.7, y);
    CHECK(psi == doctest::Approx(-(y + d + grid.p0)).epsilon(1e-11));
  }
  // pseudo-mass flux between bed and surface is exactly -p0
  CHECK(psi_at(h, d, 0.0, -d) == 1.0);
  CHECK(psi_at(h, d, 0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("solved wave round trip: psi(q, h(q,p) - d) = -p") {
  const ContinuationState& st = shared::wave(64, 32, 1e-2);
  const StripGrid& grid = st.h.grid();
  const double d = 1.0;
  double worst = 0.0;
  for (int j = 0; j < grid.n_p; ++j)
    for (int i = 0; i < grid.n_q; i += 4) {
      const double y = st.h.values()(j, i) - d;
      const double psi = psi_at(st.h, d, grid.q_nodes()(i), y);
      worst = std::max(worst, std::abs(psi - (-grid.p_nodes()(j))));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("wave surface: peak-to-trough is about twice the amplitude") {
  const ContinuationState& st = shared::wave(64, 32, 1e-2);
  auto eta = reconstruct_surface(st.h, 1.0);
  const double rng = *std::max_element(eta.y.begin(), eta.y.end()) -
                     *std::min_element(eta.y.begin(), eta.y.end());
  CHECK(rng == doctest::Approx(2.0 * st.amplitude).epsilon(0.1));
}

TEST_CASE("streamlines of a solved wave never cross") {
  const ContinuationState& st = shared::wave(64, 32, 1e-2);
  const StripGrid& grid = st.h.grid();
  const double d = 1.0;
  std::vector<double> levels{-1.0, -0.8, -0.55, -0.3, -0.1, 0.0};
  for (size_t l = 0; l + 1 < levels.size(); ++l) {
    auto below = streamline(st.h, levels[l], d);
    auto above = streamline(st.h, levels[l + 1], d);
    for (int i = 0; i < grid.n_q; ++i) CHECK(below.y[i] < above.y[i]);
  }
}

TEST_CASE("wave velocity stays below the wave speed") {
  const ContinuationState& st = shared::wave(64, 32, 1e-2);
  const double c = 2.0;
  auto params = const_params();
  auto vel = velocity_field(st.h, params.rho, c, 1.0);
  CHECK(vel.u.maxCoeff() < c);
}

TEST_CASE("psi grid masks points outside the fluid") {
  StripGrid grid(32, 16, 2.0 * M_PI, -1.0);
  auto params = const_params();
  HeightField h = laminar_field(grid, solve_laminar(params, grid, 1.0));
  auto psi = reconstruct_psi(h, 1.0, {0.0, 3.0}, {-1.5, -0.5, 0.5});
  CHECK(std::isnan(psi.psi(0, 0)));  // below the bed
  CHECK(psi.psi(1, 0) == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(std::isnan(psi.psi(2, 0)));  // above the surface
}

TEST_CASE("off-node streamline matches a doubled-resolution interpolation") {
  const ContinuationState& sc_state = shared::wave(64, 24, 5e-3);
  const ContinuationState& sf_state = shared::wave(64, 48, 5e-3);
  const double level = -0.377;  // off both node sets
  auto sc = streamline(sc_state.h, level, 1.0);
  auto sf = streamline(sf_state.h, level, 1.0);
  for (size_t i = 0; i < sc.y.size(); ++i)
    CHECK(std::abs(sc.y[i] - sf.y[i]) < 1e-8);
}
