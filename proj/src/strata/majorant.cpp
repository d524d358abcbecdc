// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "strata/errors.hpp"

namespace strata::ineq {

namespace {

double log_factorial(int n) { return std::lgamma(std::max(n, 1) + 1.0); }

double factorial_d(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binom_d(int m, int n) {
  double b = 1.0;
  for (int i = 0; i < n; ++i) b = b * (m - i) / (i + 1);
  return b;
}

// (t+1)^(t+1) / (t+1)!: converts falling factorials to plain powers.
double falling_fudge(int t) {
  return std::pow(t + 1.0, t + 1.0) / factorial_d(t + 1);
}

constexpr double eight_pi_sq = 78.95683520871486895;

struct PairShape {
  int a, b, J, sigma;
};

bool whitelisted(const PairShape& p) {
  // each shape's Leibniz mid-range kernel is dominated by one of the four
  // multi-index kernel sums (all bounded by 8 pi^2)
  return (p.a == 2 && p.b == 1 && p.J == 1 && p.sigma == 0) ||
         (p.a == 1 && p.b == 1 && p.J == 0 && p.sigma == 0) ||
         (p.a == 2 && p.b == 2 && p.J == 1 && p.sigma == 1) ||
         (p.a == 3 && p.b == 2 && p.J == 2 && p.sigma == 0) ||
         (p.a == 2 && p.b == 0 && p.J == 0 && p.sigma == 0);
}

// Worst-case ratio of the full Leibniz sum to the target factorial at total
// order m, with per-slot data ub(j) = Nu (j <= a) or Cu (j-a-1)! (j > a).
// Grouped by |beta| with the (j+1) multiplicity upper bound; H powers drop
// out (checked exponent inequalities J+sigma <= min(a,b)).
double finite_ratio(int m, const PairShape& p, double Cu, double Nu, double Cv,
                    double Nv, bool multiindex) {
  const double target = log_factorial(m - p.J - 1);
  double total = 0.0;
  for (int j = 0; j <= m; ++j) {
    const int i = m - j;
    const double ub = j <= p.a ? Nu : Cu * factorial_d(j - p.a - 1);
    const double vb = i <= p.b ? Nv : Cv * factorial_d(i - p.b - 1);
    const double mult = multiindex ? (j + 1.0) : 1.0;
    total += mult * binom_d(m, j) * ub * vb * std::exp(-target);
  }
  return total;
}

// c such that sum over the Leibniz range is <= c * target for EVERY order m:
// exact maxima over the finite pre-asymptotic range, closed bounds beyond.
double generic_pair_constant(const PairShape& p, double Cu, double Nu,
                             double Cv, double Nv, bool multiindex,
                             double mid_kernel_bound) {
  const int m0 = 2 * (p.a + p.b) + 8;
  double best = 0.0;
  for (int m = p.J + 1; m <= m0; ++m)
    best = std::max(best,
                    finite_ratio(m, p, Cu, Nu, Cv, Nv, multiindex));
  // m > m0: mid + low-tail + high-tail
  double c_mid =
      Cu * Cv * falling_fudge(p.a) * falling_fudge(p.b) * mid_kernel_bound;
  double c_low = 0.0, c_high = 0.0;
  for (int j = 0; j <= p.a; ++j)
    c_low += (multiindex ? (j + 1.0) : 1.0) *
             std::pow(2.0, j + p.b - p.J) / factorial_d(j);
  for (int i = 0; i <= p.b; ++i)
    c_high += (multiindex ? (i + 1.0) : 1.0) *
              std::pow(2.0, i + p.a - p.J) / factorial_d(i);
  return std::max(best, c_mid + Nu * Cv * c_low + Nv * Cu * c_high);
}

}  // namespace

double MajorantSequence::log_bound(int a1, int a2) const {
  const int m = a1 + a2;
  if (m < offset_j + 1) throw DomainError("order below the class range");
  return (a1 - offset_j) * std::log(H1) + a2 * std::log(H2) +
         s * log_factorial(m - offset_j - 1);
}

MajorantSequence relax_offset(const MajorantSequence& m) {
  if (m.offset_j < 1) throw RuleViolationError("offset is already 0");
  MajorantSequence out = m;
  out.offset_j = m.offset_j - 1;
  // the freed order |alpha| = j is covered by enlarging the H's past the
  // low-order data; higher orders only gain slack
  out.H1 = std::max({m.H1, m.low_order_norm, 1.0});
  out.H2 = std::max(m.H2, out.H1);
  return out;
}

double pair_product_constant(int a, int b, int J, int sigma, double Cu,
                             double Nu, double Cv, double Nv) {
  PairShape p{a, b, J, sigma};
  if (!whitelisted(p)) throw RuleViolationError("unsupported pair shape");
  return generic_pair_constant(p, Cu, Nu, Cv, Nv, /*multiindex=*/true,
                               eight_pi_sq);
}

double stab_pair_constant(int ell, double Cu, double Nu, double Cv,
                          double Nv) {
  if (ell != 1 && ell != 2) throw RuleViolationError("ell must be 1 or 2");
  // 1-d kernel sum_{0<j<k} k^(l+1)/(j^(l+1) (k-j)^(l+1)) <= 2^(l+1) pi^2
  const double kernel = std::pow(2.0, ell + 1) * M_PI * M_PI;
  PairShape p{ell, ell, ell, 0};
  return generic_pair_constant(p, Cu, Nu, Cv, Nv, /*multiindex=*/false,
                               kernel);
}

namespace {

// triple composition used by both the structural constant and the check
double stab_triple_constant(int ell, double n1, double n2, double n3) {
  const double c12 = stab_pair_constant(ell, 1.0, n1, 1.0, n2);
  const double n12 = std::pow(2.0, ell) * n1 * n2;
  return stab_pair_constant(ell, 1.0, n3, c12, n12);
}

}  // namespace

double stab_structural_constant(int ell) {
  // every monomial in the N's is dominated by (sum N + 1)^3
  return stab_triple_constant(ell, 1.0, 1.0, 1.0);
}

MajorantProduct majorant_product(const MajorantSequence& u,
                                 const MajorantSequence& v,
                                 const std::optional<MajorantSequence>& w,
                                 ProductRule rule) {
  auto same_frame = [&](const MajorantSequence& x, const MajorantSequence& y) {
    return x.H1 == y.H1 && x.H2 == y.H2 && x.s == y.s;
  };
  if (!same_frame(u, v) || (w && !same_frame(u, *w)))
    throw RuleViolationError("inputs must share (H1, H2, s)");
  if (!(u.H2 >= u.H1 && u.H1 >= 1.0))
    throw RuleViolationError("need H2 >= H1 >= 1");
  if (u.s < 1.0) throw RuleViolationError("need s >= 1");

  auto expect = [&](const MajorantSequence& x, int j) {
    if (x.offset_j != j)
      throw RuleViolationError("input offsets do not match the rule");
  };

  MajorantProduct out;
  out.result.H1 = u.H1;
  out.result.H2 = u.H2;
  out.result.s = u.s;

  const double Nu = u.low_order_norm;
  const double Nv = v.low_order_norm;
  const double Nw = w ? w->low_order_norm : 0.0;

  switch (rule) {
    case ProductRule::a: {
      expect(u, 2);
      expect(v, 1);
      const double c1 = pair_product_constant(2, 1, 1, 0, 1.0, Nu, 1.0, Nv);
      const double low_uv = 2.0 * Nu * Nv;
      if (!w) {
        out.constant = c1;
        out.result.offset_j = 1;
        out.result.low_order_norm = low_uv;
        return out;
      }
      expect(*w, 2);
      out.constant = pair_product_constant(2, 1, 1, 0, 1.0, Nw, c1, low_uv);
      out.result.offset_j = 1;
      out.result.low_order_norm = 3.0 * Nu * Nv * Nw;
      return out;
    }
    case ProductRule::b: {
      if (!w) throw RuleViolationError("rule needs three factors");
      expect(u, 2);
      expect(v, 1);
      expect(*w, 1);
      const double c1 = pair_product_constant(1, 1, 0, 0, 1.0, Nv, 1.0, Nw);
      const double low_vw = Nv * Nw;
      out.constant = pair_product_constant(2, 0, 0, 0, 1.0, Nu, c1, low_vw);
      out.result.offset_j = 0;
      out.result.low_order_norm = Nu * Nv * Nw;
      return out;
    }
    case ProductRule::c: {
      if (!w) throw RuleViolationError("rule needs three factors");
      expect(u, 2);
      expect(v, 2);
      expect(*w, 0);
      const double c1 = pair_product_constant(2, 0, 0, 0, 1.0, Nv, 1.0, Nw);
      const double low_vw = Nv * Nw;
      out.constant = pair_product_constant(2, 0, 0, 0, 1.0, Nu, c1, low_vw);
      out.result.offset_j = 0;
      out.result.low_order_norm = Nu * Nv * Nw;
      return out;
    }
    case ProductRule::d: {
      if (!w) throw RuleViolationError("rule needs three factors");
      expect(u, 2);
      expect(v, 2);
      expect(*w, 2);
      const double c1 = pair_product_constant(2, 2, 1, 1, 1.0, Nu, 1.0, Nv);
      // (uv) * H1 / c1 sits in the offset-1 class
      const double low_uv = 2.0 * Nu * Nv * u.H1 / c1;
      const double c2 = pair_product_constant(2, 1, 1, 0, 1.0, Nw, 1.0, low_uv);
      out.constant = c1 * c2 / u.H1;  // exposes the a1 - 2 exponent structure
      out.result.offset_j = 1;
      out.result.low_order_norm = 3.0 * Nu * Nv * Nw;
      return out;
    }
    case ProductRule::e: {
      if (w) throw RuleViolationError("rule takes exactly two factors");
      expect(u, 3);
      expect(v, 2);
      out.constant = pair_product_constant(3, 2, 2, 0, 1.0, Nu, 1.0, Nv);
      out.result.offset_j = 2;
      out.result.low_order_norm = 2.0 * Nu * Nv;
      return out;
    }
  }
  throw RuleViolationError("unknown rule");
}

namespace {

double sup_norm(const VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

double holder_1d(const TrigBasis& basis, const VectorXd& trace, int k,
                 double mu) {
  double total = 0.0;
  VectorXd top;
  for (int o = 0; o <= k; ++o) {
    VectorXd d = basis.derivative(trace, o);
    total += sup_norm(d);
    if (o == k) top = std::move(d);
  }
  const int n = basis.size();
  double best = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double dq = std::abs(basis.nodes()(a) - basis.nodes()(b));
      dq = std::min(dq, basis.wavelength() - dq);
      best = std::max(best, std::abs(top(a) - top(b)) / std::pow(dq, mu));
    }
  return total + best;
}

constexpr double kEqualitySlack = 1e-9;  // bound-equality cases under rounding

}  // namespace

LeibnizCheck leibniz_product_check(const TrigBasis& basis, const VectorXd& u,
                                   const VectorXd& v, const VectorXd& w,
                                   double H, int ell, int k_max, double mu) {
  if (ell != 1 && ell != 2) throw RuleViolationError("ell must be 1 or 2");
  if (H < 1.0) throw RuleViolationError("need H >= 1");
  if (k_max > basis.size() / 4)
    throw ResolutionError("k_max exceeds the n/4 derivative guard");

  LeibnizCheck out;
  out.hypothesis_ok = true;
  for (int k = ell + 1; k <= k_max && out.hypothesis_ok; ++k) {
    const double bound =
        std::pow(H, k - ell) * factorial_d(k - ell - 1);
    for (const VectorXd* f : {&u, &v, &w}) {
      if (sup_norm(basis.derivative(*f, k)) > bound * (1.0 + kEqualitySlack)) {
        out.hypothesis_ok = false;
        out.hypothesis_violation_k = k;
        break;
      }
    }
  }

  const double n1 = holder_1d(basis, u, ell + 1, mu);
  const double n2 = holder_1d(basis, v, ell + 1, mu);
  const double n3 = holder_1d(basis, w, ell + 1, mu);
  const double norm_factor = std::pow(n1 + n2 + n3 + 1.0, 3);
  out.applied_constant = stab_triple_constant(ell, n1, n2, n3) / norm_factor;

  const VectorXd prod = u.cwiseProduct(v).cwiseProduct(w);
  double worst = 0.0;
  for (int k = ell + 1; k <= k_max; ++k) {
    const double denom = norm_factor * std::pow(H, k - ell) *
                         factorial_d(k - ell - 1);
    worst = std::max(worst, sup_norm(basis.derivative(prod, k)) / denom);
  }
  out.measured_constant = worst;
  out.conclusion_ok =
      out.hypothesis_ok &&
      out.measured_constant <= out.applied_constant * (1.0 + kEqualitySlack);
  return out;
}

CompositeCheck composite_inverse_root_check(const TrigBasis& basis,
                                            const VectorXd& u, int k_max,
                                            double mu) {
  if (k_max > basis.size() / 4)
    throw ResolutionError("k_max exceeds the n/4 derivative guard");
  CompositeCheck out;
  const VectorXd u2 = u.cwiseProduct(u);
  VectorXd inv(u.size()), inv32(u.size());
  for (int i = 0; i < u.size(); ++i) {
    inv(i) = 1.0 / (1.0 + u2(i));
    inv32(i) = std::pow(1.0 + u2(i), -1.5);
  }
  const double cstar = stab_structural_constant(2);
  const double base = 2.0 * holder_1d(basis, inv, 2, mu) +
                      2.0 * holder_1d(basis, inv32, 2, mu) +
                      holder_1d(basis, basis.derivative(u2, 1), 2, mu) + 1.0;
  out.C0 = cstar * std::pow(base, 6);
  out.H_tilde = 2.0 * out.C0 * out.C0 +
                holder_1d(basis, basis.derivative(inv, 3), 0, mu) +
                holder_1d(basis, basis.derivative(inv32, 3), 0, mu);

  // log-space comparison: the constants above overflow doubles quickly
  const double log_c0 = std::log(out.C0), log_h = std::log(out.H_tilde);
  out.hypothesis_ok = true;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 3; k <= k_max; ++k) {
    const double log_bound_h =
        log_c0 + (k - 2) * log_h + log_factorial(k - 3);
    const double hk = std::log(holder_1d(basis, basis.derivative(u2, k), 0, mu));
    if (hk > log_bound_h + kEqualitySlack) out.hypothesis_ok = false;
    const double log_bound_c =
        2.0 * log_c0 + (k - 2) * log_h + log_factorial(k - 3);
    const double ck =
        std::log(holder_1d(basis, basis.derivative(inv32, k), 0, mu));
    worst = std::max(worst, ck - log_bound_c);
  }
  out.worst_log_margin = worst;
  out.conclusion_ok = out.hypothesis_ok && worst <= kEqualitySlack;
  return out;
}

}  // namespace strata::ineq
