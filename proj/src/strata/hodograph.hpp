// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "strata/strip.hpp"

namespace strata {

// A level set p = const mapped back to the physical plane, y = h(q,p) - d.
struct PhysicalStreamline {
  double p_level;
  std::vector<double> x;
  std::vector<double> y;
};

// Surface trace at p = 0: y = eta(x) = h(x, 0) - d.
PhysicalStreamline reconstruct_surface(const HeightField& h, double d);

// Streamline at any p in [p0, 0]; off-node levels use the collocation
// (barycentric) interpolant, keeping spectral accuracy.
PhysicalStreamline streamline(const HeightField& h, double p_level, double d);

// Velocity from the inverse transform: u = c - 1/(sqrt(rho) h_p),
// v = -h_q / (sqrt(rho) h_p), at physical points (q, h(q,p) - d).
struct VelocityField {
  Eigen::MatrixXd u, v;  // node-aligned with the strip grid
  Eigen::MatrixXd y;     // physical heights of the nodes
};
VelocityField velocity_field(const HeightField& h,
                             const CoefficientFunction& rho, double c,
                             double d);

// psi at a physical point; NaN outside the fluid. psi = -p where
// h(x, p) - d = y, found by bisection with a secant polish (tol 1e-11).
double psi_at(const HeightField& h, double d, double x, double y);

// psi on a rectangular grid with NaN masking outside the fluid.
struct PsiGrid {
  std::vector<double> x, y;
  Eigen::MatrixXd psi;  // y-major: psi(iy, ix)
};
PsiGrid reconstruct_psi(const HeightField& h, double d,
                        const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace strata
