// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/hodograph.hpp"

#include <cmath>
#include <limits>

#include "strata/errors.hpp"

namespace strata {

PhysicalStreamline reconstruct_surface(const HeightField& h, double d) {
  return streamline(h, 0.0, d);
}

PhysicalStreamline streamline(const HeightField& h, double p_level, double d) {
  const auto& g = h.grid();
  if (!(p_level >= g.p0 && p_level <= 0.0))
    throw DomainError("p_level outside [p0, 0]");
  PhysicalStreamline out;
  out.p_level = p_level;
  out.x.resize(g.n_q);
  out.y.resize(g.n_q);
  const VectorXd w = g.cheb->interpolation_weights(p_level);
  for (int i = 0; i < g.n_q; ++i) {
    out.x[i] = g.q_nodes()(i);
    out.y[i] = w.dot(h.values().col(i)) - d;
  }
  return out;
}

VelocityField velocity_field(const HeightField& h,
                             const CoefficientFunction& rho, double c,
                             double d) {
  const auto& g = h.grid();
  VelocityField out;
  out.u.resize(g.n_p, g.n_q);
  out.v.resize(g.n_p, g.n_q);
  out.y.resize(g.n_p, g.n_q);
  for (int j = 0; j < g.n_p; ++j) {
    const double sr = std::sqrt(rho.eval_derivative(0, g.p_nodes()(j)));
    for (int i = 0; i < g.n_q; ++i) {
      const double hp = h.hp()(j, i);
      if (!(hp >= HeightField::hp_floor))
        throw StagnationError("h_p floor violated in velocity reconstruction");
      out.u(j, i) = c - 1.0 / (sr * hp);
      out.v(j, i) = -h.hq()(j, i) / (sr * hp);
      out.y(j, i) = h.values()(j, i) - d;
    }
  }
  return out;
}

namespace {

// h(x, p_j) for all p rows at an arbitrary x via the trigonometric
// interpolant of each row.
VectorXd column_at(const HeightField& h, double x) {
  const auto& g = h.grid();
  VectorXd col(g.n_p);
  const double w = g.trig->omega();
  for (int j = 0; j < g.n_p; ++j) {
    auto c = g.trig->analyze(h.values().row(j));
    double v = c.cos_part(0);
    const int kmax = g.n_q / 2;
    for (int k = 1; k < kmax; ++k)
      v += c.cos_part(k) * std::cos(k * w * x) +
           c.sin_part(k - 1) * std::sin(k * w * x);
    v += c.cos_part(kmax) * std::cos(kmax * w * x);
    col(j) = v;
  }
  return col;
}

}  // namespace

double psi_at(const HeightField& h, double d, double x, double y) {
  const auto& g = h.grid();
  const double target = y + d;  // = h(x, p)
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double edge = 1e-12 * std::max(1.0, std::abs(d));
  if (target < -edge) return nan;
  if (target <= 0.0) return -g.p0;  // on the bed, exactly

  VectorXd col = column_at(h, x);
  const double surface = col(g.n_p - 1);
  if (target > surface + edge) return nan;
  if (target >= surface) return 0.0;

  const auto& cheb = *g.cheb;
  auto f = [&](double p) { return cheb.interpolate(col, p) - target; };
  double lo = g.p0, hi = 0.0;
  double flo = -target;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return -mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-13 * std::max(1.0, std::abs(g.p0))) break;
  }
  // secant polish
  double a = lo, b = hi, fa = f(a), fb = f(b);
  for (int it = 0; it < 8 && fa != fb; ++it) {
    const double c = b - fb * (b - a) / (fb - fa);
    if (!(c >= g.p0 && c <= 0.0)) break;
    a = b;
    fa = fb;
    b = c;
    fb = f(b);
    if (std::abs(fb) < 1e-15 * std::max(1.0, std::abs(target))) break;
  }
  return -b;
}

PsiGrid reconstruct_psi(const HeightField& h, double d,
                        const std::vector<double>& x,
                        const std::vector<double>& y) {
  PsiGrid out;
  out.x = x;
  out.y = y;
  out.psi.resize(static_cast<int>(y.size()), static_cast<int>(x.size()));
  for (size_t ix = 0; ix < x.size(); ++ix)
    for (size_t iy = 0; iy < y.size(); ++iy)
      out.psi(static_cast<int>(iy), static_cast<int>(ix)) =
          psi_at(h, d, x[ix], y[iy]);
  return out;
}

}  // namespace strata
