// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "strata/errors.hpp"

namespace strata {

Eigen::MatrixXd spectral_derivative(const StripGrid& grid,
                                    const Eigen::MatrixXd& field, int a1,
                                    int a2) {
  if (a1 < 0 || a2 < 0) throw UnsupportedOrderError("negative order");
  if (a1 > grid.n_q / 4)
    throw ResolutionError("q-derivative order beyond n_q/4 guard");
  if (a2 > grid.n_p / 2)
    throw ResolutionError("p-derivative order beyond n_p/2 guard");
  Eigen::MatrixXd out = field;
  if (a1 > 0)
    for (int j = 0; j < grid.n_p; ++j)
      out.row(j) = grid.trig->derivative(out.row(j), a1);
  if (a2 > 0)
    for (int i = 0; i < grid.n_q; ++i)
      out.col(i) = grid.cheb->derivative(out.col(i), a2);
  return out;
}

Eigen::MatrixXd spectral_derivative(const HeightField& h, int a1, int a2) {
  return spectral_derivative(h.grid(), h.values(), a1, a2);
}

HolderPairCache::HolderPairCache(const StripGrid& grid, double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie in (0,1)");
  n_ = grid.n_q * grid.n_p;
  inv_dist_mu_.assign(static_cast<size_t>(n_) * (n_ - 1) / 2, 0.f);
  const double lam = grid.lambda;
  size_t idx = 0;
  for (int a = 0; a < n_; ++a) {
    const double qa = grid.q_nodes()(a % grid.n_q);
    const double pa = grid.p_nodes()(a / grid.n_q);
    for (int b = a + 1; b < n_; ++b) {
      const double qb = grid.q_nodes()(b % grid.n_q);
      const double pb = grid.p_nodes()(b / grid.n_q);
      double dq = std::abs(qa - qb);
      dq = std::min(dq, lam - dq);
      const double dist = std::hypot(dq, pa - pb);
      inv_dist_mu_[idx++] = static_cast<float>(1.0 / std::pow(dist, mu));
    }
  }
}

double HolderPairCache::quotient_max(const Eigen::MatrixXd& field) const {
  // flatten with the same (p-major) ordering as the cache
  VectorXd f(n_);
  const int nq = static_cast<int>(field.cols());
  for (int a = 0; a < n_; ++a) f(a) = field(a / nq, a % nq);
  double best = 0.0;
  size_t idx = 0;
  for (int a = 0; a < n_; ++a) {
    const double fa = f(a);
    for (int b = a + 1; b < n_; ++b) {
      const double q = std::abs(fa - f(b)) * inv_dist_mu_[idx++];
      if (q > best) best = q;
    }
  }
  return best;
}

namespace {

double holder_norm_with_cache(const StripGrid& grid,
                              const Eigen::MatrixXd& field, int k, double mu,
                              const HolderPairCache* cache) {
  if (k < 0 || k > 2) throw DomainError("discrete norm supports k in {0,1,2}");
  double total = 0.0;
  std::vector<Eigen::MatrixXd> top;
  for (int o = 0; o <= k; ++o) {
    for (int a1 = o; a1 >= 0; --a1) {
      const int a2 = o - a1;
      Eigen::MatrixXd d = spectral_derivative(grid, field, a1, a2);
      total += d.cwiseAbs().maxCoeff();
      if (o == k) top.push_back(std::move(d));
    }
  }
  if (cache) {
    for (const auto& d : top) total += cache->quotient_max(d);
  } else {
    HolderPairCache local(grid, mu);
    for (const auto& d : top) total += local.quotient_max(d);
  }
  return total;
}

}  // namespace

double discrete_holder_norm(const StripGrid& grid,
                            const Eigen::MatrixXd& field, int k, double mu) {
  return holder_norm_with_cache(grid, field, k, mu, nullptr);
}

double discrete_holder_norm_1d(const TrigBasis& basis, const VectorXd& trace,
                               int k, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("mu must lie in (0,1)");
  if (k < 0 || k > 2) throw DomainError("discrete norm supports k in {0,1,2}");
  double total = 0.0;
  VectorXd top;
  for (int o = 0; o <= k; ++o) {
    VectorXd d = basis.derivative(trace, o);
    total += d.cwiseAbs().maxCoeff();
    if (o == k) top = std::move(d);
  }
  const int n = basis.size();
  const double lam = basis.wavelength();
  double best = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double dq = std::abs(basis.nodes()(a) - basis.nodes()(b));
      dq = std::min(dq, lam - dq);
      best = std::max(best, std::abs(top(a) - top(b)) / std::pow(dq, mu));
    }
  return total + best;
}

GrowthDiagnostic derivative_growth_diagnostic(const HeightField& h, int m_max,
                                              double mu) {
  const auto& g = h.grid();
  if (m_max < 3) throw DomainError("m_max must be >= 3");
  if (m_max + 2 > g.n_q / 4)
    throw ResolutionError("m_max + 2 exceeds the n_q/4 guard");
  HolderPairCache cache(g, mu);
  GrowthDiagnostic out;
  out.m_max = m_max;
  for (int m = 3; m <= m_max; ++m) {
    const Eigen::MatrixXd dm = spectral_derivative(g, h.values(), m, 0);
    const double norm = holder_norm_with_cache(g, dm, 2, mu, &cache);
    // (norm / (m-2)!)^(1/(m-1)) in log space
    const double r =
        std::exp((std::log(std::max(norm, 1e-300)) - std::lgamma(m - 1.0)) /
                 (m - 1.0));
    out.ratios.push_back(norm == 0.0 ? 0.0 : r);
  }
  out.L_estimate = 0.0;
  for (int m = std::max(3, m_max / 2); m <= m_max; ++m)
    out.L_estimate = std::max(out.L_estimate, out.ratios[m - 3]);
  out.tail_nonincreasing = true;
  for (int m = std::max(6, 3); m < m_max; ++m) {
    const double rm = out.ratios[m - 3], rn = out.ratios[m - 2];
    if (rn > 1.05 * rm + 1e-300) out.tail_nonincreasing = false;
  }
  return out;
}

namespace {

struct UsableModes {
  std::vector<int> k;
  std::vector<double> log_amp;
};

UsableModes usable_modes(const TrigBasis& basis, const VectorXd& trace,
                         double floor = 1e-13) {
  const VectorXd amp = basis.mode_amplitudes(trace);
  const int k_hi = (2 * (basis.size() / 2)) / 3;  // 2/3 Nyquist
  UsableModes um;
  for (int k = 1; k <= k_hi; ++k) {
    if (amp(k) > floor) {
      um.k.push_back(k);
      um.log_amp.push_back(std::log(amp(k)));
    }
  }
  return um;
}

}  // namespace

DecayFit fourier_decay_fit(const TrigBasis& basis, const VectorXd& trace) {
  UsableModes um = usable_modes(basis, trace);
  const int n = static_cast<int>(um.k.size());
  if (n < 8)
    throw InsufficientModesError(
        "fewer than 8 Fourier modes above the noise floor");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    sx += um.k[i];
    sy += um.log_amp[i];
    sxx += double(um.k[i]) * um.k[i];
    sxy += um.k[i] * um.log_amp[i];
    syy += um.log_amp[i] * um.log_amp[i];
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (int i = 0; i < n; ++i) {
    const double fit = intercept + slope * um.k[i];
    ss_res += (um.log_amp[i] - fit) * (um.log_amp[i] - fit);
    ss_tot += (um.log_amp[i] - ybar) * (um.log_amp[i] - ybar);
  }
  DecayFit out;
  out.rate = std::max(0.0, -slope);
  out.intercept = intercept;
  out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  out.n_modes = n;
  for (int i = 0; i < n; ++i) out.fit_data.emplace_back(um.k[i], um.log_amp[i]);
  return out;
}

GevreyFit gevrey_index_fit(const TrigBasis& basis, const VectorXd& trace) {
  UsableModes um = usable_modes(basis, trace);
  const int n = static_cast<int>(um.k.size());
  if (n < 8)
    throw InsufficientModesError(
        "fewer than 8 Fourier modes above the noise floor");
  // require an overall decaying spectrum
  if (um.log_amp.back() >= um.log_amp.front())
    throw DomainError("spectrum does not decay; Gevrey index undiagnosable");

  // |c_k| ~ C exp(-b k^(1/s)): for each lattice s, linear LS in (log C, b).
  GevreyFit best{1.0, std::numeric_limits<double>::infinity(), n};
  for (double s = 1.0; s <= 4.0 + 1e-9; s += 0.01) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      const double x = std::pow(double(um.k[i]), 1.0 / s);
      sx += x;
      sy += um.log_amp[i];
      sxx += x * x;
      sxy += x * um.log_amp[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30) continue;
    const double slope = (n * sxy - sx * sy) / denom;
    const double icept = (sy - slope * sx) / n;
    double sse = 0;
    for (int i = 0; i < n; ++i) {
      const double x = std::pow(double(um.k[i]), 1.0 / s);
      const double e = um.log_amp[i] - (icept + slope * x);
      sse += e * e;
    }
    const double rms = std::sqrt(sse / n);
    if (rms < best.fit_residual) {
      best.fit_residual = rms;
      best.s_hat = s;
    }
  }
  best.s_hat = 1.0 + 0.01 * std::round((best.s_hat - 1.0) / 0.01);
  return best;
}

std::vector<std::pair<int, int>> default_order_budget(int max_total,
                                                      int max_p) {
  std::vector<std::pair<int, int>> budget;
  for (int total = 2; total <= max_total; ++total)
    for (int a2 = 0; a2 <= std::min(total, max_p); ++a2)
      budget.emplace_back(total - a2, a2);
  return budget;
}

MixedDerivativeFit mixed_derivative_fit(
    const HeightField& h, const std::vector<std::pair<int, int>>& order_budget,
    double s) {
  const auto& g = h.grid();
  if (s < 1.0) throw DomainError("s must be >= 1");
  // v_alpha = ||d^alpha h||_{C^{2,0}} / ((|alpha|-2)!)^s
  struct Entry {
    int a1, a2;
    double v;
  };
  std::vector<Entry> entries;
  for (auto [a1, a2] : order_budget) {
    if (a1 + a2 < 2) throw DomainError("order budget entries need |alpha| >= 2");
    if (a1 + 2 > g.n_q / 4 || a2 + 2 > g.n_p / 2)
      throw ResolutionError("order budget exceeds the resolution guards");
    double norm2 = 0.0;
    for (int o = 0; o <= 2; ++o)
      for (int b1 = o; b1 >= 0; --b1)
        norm2 += spectral_derivative(g, h.values(), a1 + b1, a2 + (o - b1))
                     .cwiseAbs()
                     .maxCoeff();
    const double m = a1 + a2;
    entries.push_back(
        {a1, a2, norm2 / std::exp(s * std::lgamma(std::max(m - 1.0, 1.0)))});
  }

  const double step = 1.1, cap = 1e12;
  MixedDerivativeFit best;
  double best_l2 = std::numeric_limits<double>::infinity();
  for (double l1 = 1.0; l1 <= cap; l1 *= step) {
    bool ok = true;
    double l2_need = 1.0;
    for (const auto& e : entries) {
      // L1^(a1-1) L2^(a2) >= v
      if (e.a2 == 0) {
        if (std::pow(l1, e.a1 - 1) < e.v) {
          ok = false;
          break;
        }
      } else {
        const double need =
            std::pow(e.v / std::pow(l1, e.a1 - 1), 1.0 / e.a2);
        l2_need = std::max(l2_need, need);
      }
    }
    if (!ok) continue;
    double l2 = std::max(1.0, l1);
    while (l2 < l2_need && l2 <= cap) l2 *= step;
    if (l2 > cap) continue;
    if (l2 < best_l2 || (l2 == best_l2 && l1 < best.L1)) {
      best.L1 = l1;
      best.L2 = l2;
      best.feasible = true;
      best_l2 = l2;
    }
  }
  return best;
}

namespace {

// binomial as double (orders here stay small)
double binom(int m, int n) {
  double b = 1.0;
  for (int i = 0; i < n; ++i) b = b * (m - i) / (i + 1);
  return b;
}

}  // namespace

DifferentiatedSystemResidual check_differentiated_system(
    const HeightField& h, int m, const WaveParameters& params) {
  const auto& g = h.grid();
  if (m < 1) throw DomainError("m must be >= 1");
  if (m + 2 > g.n_q / 4)
    throw ResolutionError("m + 2 exceeds the n_q/4 guard");

  // all fields via the transform route, independent of linearize
  auto dq = [&](const Eigen::MatrixXd& f, int order) {
    Eigen::MatrixXd out = f;
    for (int j = 0; j < g.n_p; ++j)
      out.row(j) = g.trig->derivative(out.row(j), order);
    return out;
  };
  auto dp = [&](const Eigen::MatrixXd& f, int order) {
    Eigen::MatrixXd out = f;
    for (int i = 0; i < g.n_q; ++i)
      out.col(i) = g.cheb->derivative(out.col(i), order);
    return out;
  };

  const Eigen::MatrixXd& H = h.values();
  const Eigen::MatrixXd hq = dq(H, 1), hp = dp(H, 1), hpp = dp(H, 2),
                        hqq = dq(H, 2), hpq = dp(dq(H, 1), 1);
  const Eigen::MatrixXd hq2 = hq.cwiseProduct(hq);
  const Eigen::MatrixXd hp2 = hp.cwiseProduct(hp);
  const Eigen::MatrixXd hp3 = hp2.cwiseProduct(hp);
  const Eigen::MatrixXd hphq = hp.cwiseProduct(hq);

  const Eigen::MatrixXd dmh = dq(H, m);
  const Eigen::MatrixXd dmh_pp = dp(dmh, 2), dmh_qq = dq(dmh, 2),
                        dmh_pq = dp(dq(dmh, 1), 1);

  // A(h)[d_q^m h]
  Eigen::MatrixXd lhs_int = (Eigen::MatrixXd::Ones(g.n_p, g.n_q) + hq2)
                                .cwiseProduct(dmh_pp) -
                            2.0 * hphq.cwiseProduct(dmh_pq) +
                            hp2.cwiseProduct(dmh_qq);

  // f1: Leibniz remainders of the principal part
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(g.n_p, g.n_q);
  for (int n = 1; n <= m; ++n) {
    const double c = binom(m, n);
    f1 += c * (-dq(hq2, n).cwiseProduct(dq(hpp, m - n)) +
               2.0 * dq(hphq, n).cwiseProduct(dq(hpq, m - n)) -
               dq(hp2, n).cwiseProduct(dq(hqq, m - n)));
  }

  // f2: coefficient terms
  Eigen::MatrixXd f2 = Eigen::MatrixXd::Zero(g.n_p, g.n_q);
  {
    const Eigen::MatrixXd dmhp3 = dq(hp3, m);
    VectorXd beta_v(g.n_p), rho_p(g.n_p);
    for (int j = 0; j < g.n_p; ++j) {
      beta_v(j) = params.beta.eval_derivative(0, g.p_nodes()(j));
      rho_p(j) = params.rho.eval_derivative(1, g.p_nodes()(j));
    }
    f2 -= beta_v.asDiagonal() * dmhp3;
    Eigen::MatrixXd hmd = H;
    hmd.array() -= params.d;
    Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(g.n_p, g.n_q);
    for (int n = 0; n <= m; ++n)
      conv += binom(m, n) * dq(hmd, n).cwiseProduct(dq(hp3, m - n));
    f2 += params.g * (rho_p.asDiagonal() * conv);
  }

  DifferentiatedSystemResidual out{0.0, 0.0};
  {
    const Eigen::MatrixXd gap = lhs_int - f1 - f2;
    out.interior = gap.middleRows(1, g.n_p - 2).cwiseAbs().maxCoeff();
  }

  // surface rows
  {
    const int js = g.n_p - 1;
    const auto& tb = *g.trig;
    auto row_dq = [&](const VectorXd& r, int order) {
      return tb.derivative(r, order);
    };
    const VectorXd hq_s = hq.row(js), hp_s = hp.row(js), hqq_s = hqq.row(js);
    const VectorXd hq2_s = hq2.row(js), hp2_s = hp2.row(js);
    VectorXd w(g.n_q);
    for (int i = 0; i < g.n_q; ++i)
      w(i) = std::pow(1.0 + hq_s(i) * hq_s(i), -1.5);
    const VectorXd hp2w = hp2_s.cwiseProduct(w);

    // B(h)[d_q^m h] = 2 sigma hp^2 w * d_q^(m+2) h
    const VectorXd dm2h_s = row_dq(H.row(js), m + 2);
    const VectorXd lhs_sur = 2.0 * params.sigma * hp2w.cwiseProduct(dm2h_s);

    const double rho0 = params.rho.eval_derivative(0, 0.0);
    const VectorXd hhp2 = H.row(js).transpose().cwiseProduct(hp2_s);
    VectorXd phi1 = row_dq(hq2_s, m) + 2.0 * params.g * rho0 * row_dq(hhp2, m) -
                    params.Q * row_dq(hp2_s, m);
    VectorXd phi2 = VectorXd::Zero(g.n_q);
    for (int n = 1; n <= m; ++n)
      phi2 -= 2.0 * params.sigma * binom(m, n) *
              row_dq(hqq_s, m - n).cwiseProduct(row_dq(hp2w, n));
    out.surface = (lhs_sur - phi1 - phi2).cwiseAbs().maxCoeff();
  }
  return out;
}

RegularityReport analyze_regularity(const HeightField& h,
                                    const WaveParameters& params,
                                    const RegularityOptions& opts) {
  const auto& g = h.grid();
  RegularityReport rep;
  rep.mu = opts.mu;
  rep.m_max = opts.m_max;

  std::vector<double> levels = opts.p_levels;
  if (levels.empty()) {
    levels.push_back(0.0);
    for (int i = 1; i <= 5; ++i) levels.push_back(g.p0 * 0.1 * i);
  }
  bool any_rate = false;
  rep.analyticity_half_width = std::numeric_limits<double>::infinity();
  for (double p : levels) {
    StreamlineDecay d;
    d.p_level = p;
    const VectorXd w = g.cheb->interpolation_weights(p);
    VectorXd trace(g.n_q);
    for (int i = 0; i < g.n_q; ++i) trace(i) = w.dot(h.values().col(i));
    try {
      DecayFit fit = fourier_decay_fit(*g.trig, trace);
      d.rate = fit.rate;
      d.intercept = fit.intercept;
      d.r2 = fit.r2;
      d.n_modes = fit.n_modes;
      any_rate = true;
      rep.analyticity_half_width =
          std::min(rep.analyticity_half_width,
                   fit.rate * g.lambda / (2.0 * M_PI));
    } catch (const InsufficientModesError&) {
      d.degenerate = true;
    }
    rep.per_p_decay.push_back(d);
  }
  if (!any_rate) rep.analyticity_half_width = 0.0;

  GrowthDiagnostic gd = derivative_growth_diagnostic(h, opts.m_max, opts.mu);
  rep.growth_ratios = gd.ratios;
  rep.L_estimate = gd.L_estimate;
  rep.growth_tail_ok = gd.tail_nonincreasing;

  try {
    GevreyFit gf = gevrey_index_fit(*g.trig, h.surface_trace());
    rep.gevrey_index_hat = gf.s_hat;
    rep.gevrey_fit_residual = gf.fit_residual;
  } catch (const Error&) {
    rep.gevrey_degenerate = true;
  }

  MixedDerivativeFit mf = mixed_derivative_fit(
      h, default_order_budget(opts.budget_total, opts.budget_p), opts.fm_s);
  rep.fm_L1 = mf.L1;
  rep.fm_L2 = mf.L2;
  rep.fm_feasible = mf.feasible;
  return rep;
}

}  // namespace strata
