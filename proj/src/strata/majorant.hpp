// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>

#include "strata/spectral.hpp"

namespace strata::ineq {

// Factorial-type derivative bound family on the strip:
//   ||d^alpha f|| <= H1^(a1-j) H2^(a2) ((|alpha|-j-1)!)^s  for |alpha| >= j+1,
// with low_order_norm covering sup norms of the orders <= j.
struct MajorantSequence {
  double H1 = 1.0;
  double H2 = 1.0;
  int offset_j = 0;  // 0..3
  double s = 1.0;
  double low_order_norm = 0.0;

  // log of the class bound at multi-order (a1, a2); |alpha| >= offset_j + 1.
  double log_bound(int a1, int a2) const;
  double bound(int a1, int a2) const { return std::exp(log_bound(a1, a2)); }
};

// A_j membership is monotone downward in j once constants are enlarged.
MajorantSequence relax_offset(const MajorantSequence& m);

enum class ProductRule { a, b, c, d, e };

struct MajorantProduct {
  MajorantSequence result;  // class shape of the product (or trailing pair)
  double constant;          // ||d^alpha(product)|| <= constant * result.bound
};

// Leibniz product closure: rules mirror the pairings
//   (a) A2 * A1 (* A2)        -> A1
//   (b) A2 * A1 * A1          -> A0
//   (c) A2 * A2 * A0          -> A0
//   (d) A2 * A2 * A2          -> A1 with an extra 1/H1 (exponent a1 - 2)
//   (e) A3 * A2               -> A2
// The returned constant is computed from the inputs' low-order norms and is
// valid for every order (no cap): the Leibniz mid-range reduces to the four
// multi-index kernel sums, the low/high ranges to finite maxima plus
// explicitly bounded tails.
MajorantProduct majorant_product(const MajorantSequence& u,
                                 const MajorantSequence& v,
                                 const std::optional<MajorantSequence>& w,
                                 ProductRule rule);

// Pair engine (exposed for tests): c with
//   ||d^alpha(uv)|| <= c * H1^(a1-J-sigma) H2^(a2) ((|alpha|-J-1)!)^s,
// where u is bounded by Cu * (A_a shape) with low data Nu, v likewise.
// Only the rule combinations (a,b,J,sigma) used above are whitelisted.
double pair_product_constant(int a, int b, int J, int sigma, double Cu,
                             double Nu, double Cv, double Nv);

// 1-d (q-derivative) analog used by the triple-product stability check:
// hypothesis ||d_q^k u|| <= Cu H^(k-ell) (k-ell-1)! for k >= ell+1.
double stab_pair_constant(int ell, double Cu, double Nu, double Cv, double Nv);

// Structural constant of the triple-product lemma: the conclusion holds with
// C * (sum of low norms + 1)^3. Depends only on ell in {1, 2}.
double stab_structural_constant(int ell);

struct LeibnizCheck {
  bool hypothesis_ok = false;
  int hypothesis_violation_k = -1;
  bool conclusion_ok = false;
  // max_k ||d_q^k(u v w)|| / ((sum low norms + 1)^3 H^(k-ell) (k-ell-1)!)
  double measured_constant = 0.0;
  double applied_constant = 0.0;  // rigorous counterpart, same normalization
};

// Empirical triple-product check on sampled periodic functions: sup norms
// drive the hypothesis/conclusion sequences (the bound's equality cases leave
// no room for a Hölder seminorm), the low-order factor uses the discrete
// (ell+1, mu) norm as stated in the lemma's conclusion.
LeibnizCheck leibniz_product_check(const TrigBasis& basis, const VectorXd& u,
                                   const VectorXd& v, const VectorXd& w,
                                   double H, int ell, int k_max, double mu);

struct CompositeCheck {
  bool hypothesis_ok = false;
  bool conclusion_ok = false;
  double C0 = 0.0;
  double H_tilde = 0.0;
  double worst_log_margin = 0.0;  // max over k of log(measured / bound), < 0 ok
};

// Bound chain for (1 + u^2)^(-3/2): constants from the stated inequalities
// (C0 from the sixth-power expression, H_tilde from 2 C0^2 + third-derivative
// norms), hypothesis on d_q^k(u^2), conclusion on d_q^k (1+u^2)^(-3/2),
// discrete (0, mu) and (2, mu) norms with mu as given.
CompositeCheck composite_inverse_root_check(const TrigBasis& basis,
                                            const VectorXd& u, int k_max,
                                            double mu);

}  // namespace strata::ineq
