// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "strata/errors.hpp"

namespace strata {

namespace {

// Zero coefficients below floor * max|coeff|; modifies in place.
void apply_floor(VectorXd& a, double floor) {
  const double cut = floor * a.cwiseAbs().maxCoeff();
  for (int i = 0; i < a.size(); ++i)
    if (std::abs(a(i)) < cut) a(i) = 0.0;
}

}  // namespace

TrigBasis::TrigBasis(int n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 4 || n % 2 != 0)
    throw DomainError("trig basis needs an even node count >= 4");
  if (!(lambda > 0)) throw DomainError("wavelength must be positive");
  omega_ = 2.0 * M_PI / lambda_;
  q_.resize(n_);
  for (int i = 0; i < n_; ++i) q_(i) = lambda_ * i / n_;

  const int kmax = n_ / 2;
  synth_cos_.resize(n_, kmax + 1);
  anal_cos_.resize(kmax + 1, n_);
  synth_sin_.resize(n_, kmax - 1);
  anal_sin_.resize(kmax - 1, n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k <= kmax; ++k) {
      const double c = std::cos(2.0 * M_PI * k * i / n_);
      synth_cos_(i, k) = c;
      const double norm = (k == 0 || k == kmax) ? 1.0 / n_ : 2.0 / n_;
      anal_cos_(k, i) = norm * c;
    }
    for (int k = 1; k < kmax; ++k) {
      const double s = std::sin(2.0 * M_PI * k * i / n_);
      synth_sin_(i, k - 1) = s;
      anal_sin_(k - 1, i) = (2.0 / n_) * s;
    }
  }

  // Differentiation matrices from the multiplier route; then pin row sums so
  // constants differentiate to exactly zero.
  MatrixXd m1 = MatrixXd::Zero(kmax + 1, kmax + 1);
  MatrixXd m1s = MatrixXd::Zero(kmax - 1, kmax - 1);
  MatrixXd m2 = MatrixXd::Zero(kmax + 1, kmax + 1);
  MatrixXd m2s = MatrixXd::Zero(kmax - 1, kmax - 1);
  for (int k = 1; k < kmax; ++k) {
    m1(k, k) = 0.0;
    m1s(k - 1, k - 1) = 0.0;
    m2(k, k) = -(k * omega_) * (k * omega_);
    m2s(k - 1, k - 1) = m2(k, k);
  }
  m2(kmax, kmax) = -(kmax * omega_) * (kmax * omega_);
  // d/dq swaps cos<->sin: cos_k -> -k w sin_k, sin_k -> k w cos_k.
  MatrixXd cos_to_sin = MatrixXd::Zero(kmax - 1, kmax + 1);
  MatrixXd sin_to_cos = MatrixXd::Zero(kmax + 1, kmax - 1);
  for (int k = 1; k < kmax; ++k) {
    cos_to_sin(k - 1, k) = -k * omega_;
    sin_to_cos(k, k - 1) = k * omega_;
  }
  d1_ = synth_sin_ * cos_to_sin * anal_cos_ + synth_cos_ * sin_to_cos * anal_sin_;
  d2_ = synth_cos_ * m2 * anal_cos_ + synth_sin_ * m2s * anal_sin_;
  for (MatrixXd* d : {&d1_, &d2_}) {
    for (int i = 0; i < n_; ++i) {
      const double defect = d->row(i).sum() / n_;
      d->row(i).array() -= defect;
    }
  }
}

TrigBasis::Coeffs TrigBasis::analyze(const VectorXd& v) const {
  return {anal_cos_ * v, anal_sin_ * v};
}

VectorXd TrigBasis::synthesize(const Coeffs& c) const {
  return synth_cos_ * c.cos_part + synth_sin_ * c.sin_part;
}

VectorXd TrigBasis::mode_amplitudes(const VectorXd& v) const {
  Coeffs c = analyze(v);
  const int kmax = n_ / 2;
  VectorXd r(kmax + 1);
  r(0) = std::abs(c.cos_part(0));
  r(kmax) = std::abs(c.cos_part(kmax));
  for (int k = 1; k < kmax; ++k)
    r(k) = std::hypot(c.cos_part(k), c.sin_part(k - 1));
  return r;
}

VectorXd TrigBasis::derivative(const VectorXd& v, int order) const {
  if (order < 0) throw UnsupportedOrderError("negative derivative order");
  if (order == 0) return v;
  Coeffs c = analyze(v);
  {
    const double amax =
        std::max(c.cos_part.cwiseAbs().maxCoeff(),
                 c.sin_part.size() ? c.sin_part.cwiseAbs().maxCoeff() : 0.0);
    const double cut = coeff_floor * amax;
    for (int i = 0; i < c.cos_part.size(); ++i)
      if (std::abs(c.cos_part(i)) < cut) c.cos_part(i) = 0.0;
    for (int i = 0; i < c.sin_part.size(); ++i)
      if (std::abs(c.sin_part(i)) < cut) c.sin_part(i) = 0.0;
  }
  const int kmax = n_ / 2;
  // (A_k cos + B_k sin)^(m): rotate the pair by m*pi/2 and scale by (k w)^m.
  Coeffs out;
  out.cos_part = VectorXd::Zero(kmax + 1);
  out.sin_part = VectorXd::Zero(std::max(kmax - 1, 0));
  for (int k = 1; k <= kmax; ++k) {
    const double a = c.cos_part(k);
    const double b = (k < kmax) ? c.sin_part(k - 1) : 0.0;
    const double scale = std::pow(k * omega_, order);
    double ca = a, cb = b;
    switch (order % 4) {
      case 0: break;
      case 1: { const double t = ca; ca = cb; cb = -t; } break;
      case 2: ca = -ca; cb = -cb; break;
      case 3: { const double t = ca; ca = -cb; cb = t; } break;
    }
    if (k < kmax) {
      out.cos_part(k) = scale * ca;
      out.sin_part(k - 1) = scale * cb;
    } else {
      // Nyquist mode: the sine component is invisible on the grid; odd
      // derivatives of the cosine part sample to zero at the nodes.
      out.cos_part(k) = (order % 2 == 0) ? scale * ca : 0.0;
    }
  }
  return synthesize(out);
}

ChebBasis::ChebBasis(int n, double p0) : n_(n), p0_(p0) {
  if (n < 4) throw DomainError("chebyshev basis needs >= 4 nodes");
  if (!(p0 < 0)) throw DomainError("p0 must be negative");
  const int m = n_ - 1;
  p_.resize(n_);
  x_.resize(n_);
  bary_w_.resize(n_);
  for (int i = 0; i <= m; ++i) {
    // ascending reference nodes; explicit sin form keeps them symmetric
    x_(i) = -std::cos(M_PI * i / m);
    p_(i) = p0_ * (1.0 - x_(i)) / 2.0;
    bary_w_(i) = ((i % 2 == 0) ? 1.0 : -1.0) * ((i == 0 || i == m) ? 0.5 : 1.0);
  }
  p_(0) = p0_;
  p_(m) = 0.0;

  anal_.resize(n_, n_);
  synth_.resize(n_, n_);
  for (int i = 0; i <= m; ++i) {
    for (int k = 0; k <= m; ++k) {
      // T_k at ascending node i: cos(k * (pi - pi i / m))
      const double t = std::cos(k * M_PI * (m - i) / m);
      synth_(i, k) = t;
      const double wj = (i == 0 || i == m) ? 0.5 : 1.0;
      const double ck = (k == 0 || k == m) ? 0.5 : 1.0;
      anal_(k, i) = (2.0 / m) * ck * wj * t;
    }
  }

  // Barycentric D with negative-sum-trick diagonal, then chain rule to p.
  MatrixXd dx(n_, n_);
  for (int i = 0; i <= m; ++i) {
    double diag = 0.0;
    for (int j = 0; j <= m; ++j) {
      if (i == j) continue;
      dx(i, j) = (bary_w_(j) / bary_w_(i)) / (x_(i) - x_(j));
      diag -= dx(i, j);
    }
    dx(i, i) = diag;
  }
  const double chain = -2.0 / p0_;  // dx/dp
  d1_ = dx * chain;
  // Rank-2 row fix: exactness on constants is the negative-sum trick; add a
  // correction supported on the end columns so d1*p == 1 row-wise.
  for (int i = 0; i < n_; ++i) {
    const double defect = d1_.row(i).dot(p_) - 1.0;
    const double delta = defect / p0_;  // p_(0) - p_(n-1) = p0
    d1_(i, 0) -= delta;
    d1_(i, n_ - 1) += delta;
  }
  d2_ = d1_ * d1_;
  for (int i = 0; i < n_; ++i) {
    const double r1 = d2_.row(i).dot(p_);
    const double r0 = d2_.row(i).sum();
    const double a = r1 / p0_;
    d2_(i, 0) -= a;
    d2_(i, n_ - 1) -= (r0 - a);
  }
}

VectorXd ChebBasis::analyze(const VectorXd& v) const { return anal_ * v; }

VectorXd ChebBasis::synthesize(const VectorXd& a) const { return synth_ * a; }

VectorXd ChebBasis::dcoef(const VectorXd& a) const {
  const int m = n_ - 1;
  VectorXd b = VectorXd::Zero(n_);
  for (int k = m - 1; k >= 0; --k) {
    const double up = (k + 2 <= m) ? b(k + 2) : 0.0;
    b(k) = up + 2.0 * (k + 1) * a(k + 1);
  }
  b(0) *= 0.5;
  return b * (-2.0 / p0_);
}

VectorXd ChebBasis::derivative(const VectorXd& v, int order) const {
  if (order < 0) throw UnsupportedOrderError("negative derivative order");
  if (order == 0) return v;
  VectorXd a = analyze(v);
  apply_floor(a, coeff_floor);
  for (int o = 0; o < order; ++o) a = dcoef(a);
  return synthesize(a);
}

double ChebBasis::interpolate(const VectorXd& v, double p) const {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double d = p - p_(i);
    if (d == 0.0) return v(i);
    const double t = bary_w_(i) / d;
    num += t * v(i);
    den += t;
  }
  return num / den;
}

VectorXd ChebBasis::interpolation_weights(double p) const {
  VectorXd w = VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (p == p_(i)) {
      w(i) = 1.0;
      return w;
    }
  }
  double den = 0.0;
  for (int i = 0; i < n_; ++i) {
    w(i) = bary_w_(i) / (p - p_(i));
    den += w(i);
  }
  return w / den;
}

}  // namespace strata
