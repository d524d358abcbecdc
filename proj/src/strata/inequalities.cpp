// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/inequalities.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "strata/errors.hpp"

namespace strata::ineq {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cpp_int binomial(int m, int n) {
  if (n < 0 || n > m) return 0;
  cpp_int b = 1;
  for (int i = 0; i < n; ++i) {
    b *= (m - i);
    b /= (i + 1);
  }
  return b;
}

cpp_int ipow(cpp_int base, int e) {
  cpp_int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

}  // namespace

bool binomial_dominance_holds(MultiIndex alpha, MultiIndex beta) {
  if (beta[0] < 0 || beta[1] < 0 || beta[0] > alpha[0] || beta[1] > alpha[1])
    throw DomainError("beta must satisfy 0 <= beta <= alpha componentwise");
  const cpp_int lhs = binomial(alpha[0], beta[0]) * binomial(alpha[1], beta[1]);
  const cpp_int rhs = binomial(length(alpha), length(beta));
  return lhs <= rhs;
}

bool factorial_superadditivity_holds(int m, int n, double s) {
  if (m < 0 || n < 0) throw DomainError("m, n must be >= 0");
  if (s < 1.0) throw DomainError("s must be >= 1");
  if (s == 1.0) return true;  // both sides equal 1
  return factorial(m) * factorial(n) <= factorial(m + n);
}

namespace {

constexpr double two_pi_sq = 2.0 * M_PI * M_PI;

KernelSumResult finish(const cpp_rational& sum, double bound) {
  KernelSumResult r;
  r.sum = static_cast<double>(sum);
  r.bound = bound;
  r.ok = r.sum <= bound;
  return r;
}

}  // namespace

KernelSumResult kernel_power_sum(int m, int k) {
  if (m < 2) throw DomainError("kernel sum needs m >= 2");
  if (k < 2 || k > 3) throw DomainError("k must be 2 or 3");
  cpp_rational sum = 0;
  const cpp_int mk = ipow(m, k);
  for (int j = 1; j < m; ++j)
    sum += cpp_rational(mk, ipow(j, k) * ipow(m - j, k));
  return finish(sum, std::pow(2.0, k) * M_PI * M_PI);
}

long multiindex_count(MultiIndex alpha, int j) {
  const int lo = std::max(0, j - alpha[1]);
  const int hi = std::min(alpha[0], j);
  return hi >= lo ? hi - lo + 1 : 0;
}

namespace {

std::array<KernelSumResult, 4> sums_from_counts(
    MultiIndex alpha, const std::vector<long>& counts) {
  const int m = length(alpha);
  std::array<cpp_rational, 4> acc{0, 0, 0, 0};
  for (int j = 1; j < m; ++j) {
    if (!counts[j]) continue;
    const cpp_int c = counts[j];
    const cpp_int j2 = ipow(j, 2), j3 = ipow(j, 3), j4 = ipow(j, 4);
    const cpp_int r = m - j, r2 = ipow(m - j, 2), r3 = ipow(m - j, 3);
    acc[0] += cpp_rational(c * ipow(m, 2), j3 * r2);
    acc[1] += cpp_rational(c * ipow(m, 2), j2 * r2);
    acc[2] += cpp_rational(c * m, j3 * r);
    acc[3] += cpp_rational(c * ipow(m, 3), j4 * r3);
  }
  const double b = 4.0 * two_pi_sq;  // 8 pi^2
  return {finish(acc[0], b), finish(acc[1], b * m), finish(acc[2], b),
          finish(acc[3], b)};
}

}  // namespace

std::array<KernelSumResult, 4> multiindex_kernel_sums(MultiIndex alpha) {
  const int m = length(alpha);
  if (m < 2) throw DomainError("kernel sums need |alpha| >= 2");
  std::vector<long> counts(m, 0);
  for (int j = 1; j < m; ++j) counts[j] = multiindex_count(alpha, j);
  return sums_from_counts(alpha, counts);
}

std::array<KernelSumResult, 4> multiindex_kernel_sums_enumerated(
    MultiIndex alpha) {
  const int m = length(alpha);
  if (m < 2) throw DomainError("kernel sums need |alpha| >= 2");
  std::vector<long> counts(m, 0);
  for (int b1 = 0; b1 <= alpha[0]; ++b1)
    for (int b2 = 0; b2 <= alpha[1]; ++b2) {
      const int j = b1 + b2;
      if (j > 0 && j < m) ++counts[j];
    }
  return sums_from_counts(alpha, counts);
}

}  // namespace strata::ineq
