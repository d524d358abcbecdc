// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

namespace strata::ineq {

using MultiIndex = std::array<int, 2>;

inline int length(MultiIndex a) { return a[0] + a[1]; }

// C(alpha, beta) <= C(|alpha|, |beta|), exact big-integer comparison.
// Throws DomainError unless beta <= alpha componentwise. Always true; a
// false return means a broken build, and callers treat it as such.
bool binomial_dominance_holds(MultiIndex alpha, MultiIndex beta);

// (m!)^(s-1) (n!)^(s-1) <= ((m+n)!)^(s-1), exact for s > 1 via m! n! <=
// (m+n)!; trivially true at s = 1.
bool factorial_superadditivity_holds(int m, int n, double s);

struct KernelSumResult {
  double sum;
  double bound;
  bool ok;
};

// sum_{0<j<m} m^k / (j^k (m-j)^k) vs 2^k pi^2, exact rational sum, k in {2,3}.
KernelSumResult kernel_power_sum(int m, int k);

// The four multi-index kernel sums over beta <= alpha, 0 < |beta| < |alpha|:
//   S1 = sum |a|^2/(|b|^3 (|a|-|b|)^2) <= 8 pi^2
//   S2 = sum |a|^2/(|b|^2 (|a|-|b|)^2) <= 8 pi^2 |a|
//   S3 = sum |a|  /(|b|^3 (|a|-|b|))   <= 8 pi^2
//   S4 = sum |a|^3/(|b|^4 (|a|-|b|)^3) <= 8 pi^2
// Terms depend on beta only through |beta|, so the exact rational sum groups
// by |beta| with an exact multiplicity count.
std::array<KernelSumResult, 4> multiindex_kernel_sums(MultiIndex alpha);

// Same sums via direct enumeration of every beta (cross-check path).
std::array<KernelSumResult, 4> multiindex_kernel_sums_enumerated(
    MultiIndex alpha);

// Number of beta <= alpha with |beta| = j.
long multiindex_count(MultiIndex alpha, int j);

}  // namespace strata::ineq
