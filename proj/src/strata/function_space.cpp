// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "strata/errors.hpp"

namespace strata {

namespace {

double poly_derivative(const std::vector<double>& c, int k, double x) {
  // d^k/dx^k sum c_i x^i = sum_{i>=k} c_i i!/(i-k)! x^(i-k), Horner on the
  // shifted coefficients.
  const int n = static_cast<int>(c.size());
  if (k >= n) return 0.0;
  double acc = 0.0;
  for (int i = n - 1; i >= k; --i) {
    double fall = 1.0;
    for (int j = 0; j < k; ++j) fall *= (i - j);
    acc = acc * x + c[i] * fall;
  }
  return acc;
}

}  // namespace

CoefficientFunction::CoefficientFunction(Kind kind, std::vector<double> coeffs,
                                         double p0, std::vector<double> den,
                                         std::optional<double> declared_s,
                                         std::optional<double> declared_M)
    : kind_(kind),
      coeffs_(std::move(coeffs)),
      den_(std::move(den)),
      p0_(p0),
      declared_s_(declared_s),
      declared_M_(declared_M) {
  if (!(p0_ < 0)) throw DomainError("coefficient function needs p0 < 0");
  if (coeffs_.empty()) throw DomainError("coefficient list is empty");
  if (declared_s_ && *declared_s_ < 1.0)
    throw DomainError("declared Gevrey index must be >= 1");
  if (declared_M_ && *declared_M_ <= 0.0)
    throw DomainError("declared Gevrey constant must be positive");
  switch (kind_) {
    case Kind::constant:
      coeffs_.resize(1);
      break;
    case Kind::exponential:
      if (coeffs_.size() > 3)
        throw DomainError("exponential kind takes at most 3 coefficients");
      if (coeffs_.size() == 1) coeffs_.push_back(1.0);  // rate defaults to 1
      coeffs_.resize(3, 0.0);                           // offset defaults to 0
      break;
    case Kind::rational: {
      if (den_.empty()) throw DomainError("rational kind needs a denominator");
      // no pole in [p0, 0]: denominator bounded away from zero on a fine grid
      double mn = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 2048; ++i) {
        const double p = p0_ + (0.0 - p0_) * i / 2048.0;
        mn = std::min(mn, std::abs(poly_derivative(den_, 0, p)));
      }
      if (!(mn > 1e-9))
        throw DomainError("rational denominator vanishes on [p0, 0]");
      break;
    }
    default:
      break;
  }
}

CoefficientFunction CoefficientFunction::make_constant(double value, double p0) {
  return CoefficientFunction(Kind::constant, {value}, p0);
}

bool CoefficientFunction::is_identically_zero() const {
  switch (kind_) {
    case Kind::constant:
      return coeffs_[0] == 0.0;
    case Kind::polynomial:
    case Kind::series:
      return std::all_of(coeffs_.begin(), coeffs_.end(),
                         [](double c) { return c == 0.0; });
    case Kind::exponential:
      return coeffs_[0] == 0.0 && coeffs_[2] == 0.0;
    case Kind::rational:
      return std::all_of(coeffs_.begin(), coeffs_.end(),
                         [](double c) { return c == 0.0; });
  }
  return false;
}

void CoefficientFunction::check_domain(double p) const {
  if (!(p >= p0_ && p <= 0.0))
    throw DomainError("evaluation point outside [p0, 0]");
}

double CoefficientFunction::eval_derivative(int k, double p) const {
  if (k < 0 || k > order_cap)
    throw UnsupportedOrderError("derivative order above cap");
  check_domain(p);
  switch (kind_) {
    case Kind::constant:
      return k == 0 ? coeffs_[0] : 0.0;
    case Kind::polynomial:
      return poly_derivative(coeffs_, k, p);
    case Kind::series:
      return poly_derivative(coeffs_, k, p - p0_);
    case Kind::exponential: {
      const double a = coeffs_[0], b = coeffs_[1], c = coeffs_[2];
      const double v = a * std::pow(b, k) * std::exp(b * p);
      return k == 0 ? v + c : v;
    }
    case Kind::rational: {
      // f = N/D: d^k N = sum_j C(k,j) d^j f d^(k-j) D, solve for d^k f.
      std::vector<double> f(k + 1);
      const double d0 = poly_derivative(den_, 0, p);
      for (int m = 0; m <= k; ++m) {
        double rhs = poly_derivative(coeffs_, m, p);
        double binom = 1.0;
        for (int j = 0; j < m; ++j) {
          // binom = C(m, j)
          rhs -= binom * f[j] * poly_derivative(den_, m - j, p);
          binom = binom * (m - j) / (j + 1);
        }
        f[m] = rhs / d0;
      }
      return f[k];
    }
  }
  return 0.0;
}

CoefficientFunction::Kind coefficient_kind_from_string(const std::string& s) {
  if (s == "constant") return CoefficientFunction::Kind::constant;
  if (s == "polynomial") return CoefficientFunction::Kind::polynomial;
  if (s == "series") return CoefficientFunction::Kind::series;
  if (s == "exponential") return CoefficientFunction::Kind::exponential;
  if (s == "rational") return CoefficientFunction::Kind::rational;
  throw ConfigError("unknown coefficient function kind: " + s);
}

std::string to_string(CoefficientFunction::Kind k) {
  switch (k) {
    case CoefficientFunction::Kind::constant: return "constant";
    case CoefficientFunction::Kind::polynomial: return "polynomial";
    case CoefficientFunction::Kind::series: return "series";
    case CoefficientFunction::Kind::exponential: return "exponential";
    case CoefficientFunction::Kind::rational: return "rational";
  }
  return "?";
}

std::vector<double> default_probe_grid(double p0, int count) {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = p0 + (0.0 - p0) * i / (count - 1);
  g.back() = 0.0;
  return g;
}

namespace {

// M^(k+1) (k!)^s with an overflow-safe fallback through logs.
double gevrey_bound_value(double M, double s, int k) {
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  const double direct = std::pow(M, k + 1) * std::pow(fact, s);
  if (std::isfinite(direct) && direct > 0.0) return direct;
  return std::exp((k + 1) * std::log(M) + s * std::lgamma(k + 1.0));
}

}  // namespace

GevreyCheck verify_gevrey_bound(const CoefficientFunction& f, double s,
                                double M, int k_max,
                                const std::vector<double>& probe_grid) {
  if (probe_grid.empty()) throw DomainError("empty probe grid");
  GevreyCheck out;
  out.ok = true;
  for (int k = 0; k <= k_max; ++k) {
    const double bound = gevrey_bound_value(M, s, k);
    for (double p : probe_grid) {
      const double v = std::abs(f.eval_derivative(k, p));
      const double ratio = v == 0.0 ? 0.0 : v / bound;
      if (ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.worst_k = k;
        out.worst_p = p;
      }
      if (v > bound) out.ok = false;
    }
  }
  return out;
}

GevreyCheck verify_gevrey_bound(const CoefficientFunction& f, double s,
                                double M, int k_max) {
  return verify_gevrey_bound(f, s, M, k_max, default_probe_grid(f.p0()));
}

GevreyEstimate estimate_gevrey_constants(const CoefficientFunction& f,
                                         int k_max) {
  if (k_max < 5) throw DomainError("estimate needs k_max >= 5");
  const auto grid = default_probe_grid(f.p0());
  std::vector<double> amax(k_max + 1, 0.0);
  for (int k = 0; k <= k_max; ++k)
    for (double p : grid)
      amax[k] = std::max(amax[k], std::abs(f.eval_derivative(k, p)));

  GevreyEstimate est;
  if (*std::max_element(amax.begin(), amax.end()) == 0.0) {
    est.degenerate = true;
    est.s_hat = 1.0;
    est.M_hat = std::numeric_limits<double>::min();
    return est;
  }
  int k_eff = k_max;
  while (k_eff > 0 && amax[k_eff] == 0.0) --k_eff;

  // m_k(s) = (A_k / (k!)^s)^(1/(k+1)); minimal M for this s is max_k m_k.
  auto profile = [&](double s) {
    std::vector<double> m(k_eff + 1);
    for (int k = 0; k <= k_eff; ++k) {
      if (amax[k] == 0.0) {
        m[k] = 0.0;
        continue;
      }
      m[k] = std::exp((std::log(amax[k]) - s * std::lgamma(k + 1.0)) / (k + 1));
    }
    return m;
  };
  auto first_argmax = [&](const std::vector<double>& m) {
    int arg = 0;
    double best = -1.0;
    for (int k = 0; k <= k_eff; ++k)
      if (m[k] > best * (1.0 + 1e-9)) {
        best = m[k];
        arg = k;
      }
    return arg;
  };

  // An s "admits a finite M" when the binding order stays away from the cap:
  // below the true index the profile grows toward k_eff and the constraint
  // escapes with the cap. The top two orders are excluded from "interior"
  // because truncation flattens the profile right at the cap.
  const double s_step = 0.05, s_max = 6.0;
  double chosen = s_max;
  if (k_eff < 5) {
    chosen = 1.0;
  } else {
    for (double s = 1.0; s <= s_max + 1e-12; s += s_step) {
      if (first_argmax(profile(s)) <= k_eff - 2) {
        chosen = s;
        break;
      }
    }
  }
  // snap to the lattice exactly
  chosen = 1.0 + s_step * std::round((chosen - 1.0) / s_step);
  est.s_hat = chosen;
  const auto m = profile(chosen);
  est.M_hat = *std::max_element(m.begin(), m.end());
  return est;
}

}  // namespace strata
