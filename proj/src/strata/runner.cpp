// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "strata/errors.hpp"
#include "strata/field_io.hpp"
#include "strata/hodograph.hpp"
#include "strata/inequalities.hpp"
#include "strata/majorant.hpp"

namespace strata {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::generic, "cannot create " + dir);
}

std::string write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::generic, "cannot write " + path);
  out << text;
  return text;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json state_row(const ContinuationState& st) {
  return json{{"amplitude", st.amplitude},
              {"Q", st.Q},
              {"residual_norm", st.residual_norm},
              {"min_hp", st.h.min_hp()},
              {"max_hp", st.h.max_hp()},
              {"step", st.step_count}};
}

}  // namespace

std::string run_laminar(const RunConfig& cfg, const std::string& out_dir) {
  ensure_dir(out_dir);
  const StripGrid grid = cfg.make_grid();
  const LaminarFlow lam = solve_laminar(cfg.params, grid, cfg.solver.kappa0);

  std::string csv = "# config_hash=" + hex64(cfg.config_hash) + "\np,H,H_p\n";
  for (int j = 0; j < grid.n_p; ++j)
    csv += fmt(grid.p_nodes()(j)) + "," + fmt(lam.profile(j)) + "," +
           fmt(lam.slope(j)) + "\n";
  write_text(out_dir + "/laminar_profile.csv", csv);

  json summary = {{"command", "laminar"},
                  {"config_hash", hex64(cfg.config_hash)},
                  {"kappa", lam.kappa},
                  {"Q", lam.Q},
                  {"surface_height", lam.profile(grid.n_p - 1)},
                  {"min_hp", lam.slope.minCoeff()},
                  {"max_hp", lam.slope.maxCoeff()}};
  return write_text(out_dir + "/laminar_summary.json", summary.dump(2) + "\n");
}

namespace {

std::string run_branch(const RunConfig& cfg, const std::string& out_dir,
                       bool keep_all) {
  ensure_dir(out_dir);
  const StripGrid grid = cfg.make_grid();
  ContinuationOptions opts;
  opts.newton.tol = cfg.solver.tol;
  opts.newton.max_iter = cfg.solver.max_iter;
  opts.kappa_range = cfg.solver.kappa_range;
  std::vector<double> targets = cfg.solver.amplitude_targets;
  if (targets.empty()) targets = {0.0};

  ContinuationResult res = continuation_run(cfg.params, grid, targets, opts);

  std::string csv = "# config_hash=" + hex64(cfg.config_hash) +
                    "\nindex,amplitude,Q,residual,min_hp,max_hp\n";
  json states = json::array();
  for (size_t i = 0; i < res.states.size(); ++i) {
    const auto& st = res.states[i];
    csv += std::to_string(i) + "," + fmt(st.amplitude) + "," + fmt(st.Q) + "," +
           fmt(st.residual_norm) + "," + fmt(st.h.min_hp()) + "," +
           fmt(st.h.max_hp()) + "\n";
    states.push_back(state_row(st));
    if (keep_all || i + 1 == res.states.size()) {
      char name[64];
      std::snprintf(name, sizeof name, "state_%04zu.swf", i);
      StateMeta meta{st.Q, st.amplitude, st.residual_norm, cfg.config_hash};
      save_state(out_dir + "/" + name, st.h, meta);
    }
  }
  write_text(out_dir + "/branch_summary.csv", csv);

  json summary = {{"command", keep_all ? "continue" : "solve"},
                  {"config_hash", hex64(cfg.config_hash)},
                  {"kappa_star", res.kappa_star},
                  {"laminar_Q", res.base.Q},
                  {"states", states},
                  {"aborted", res.aborted}};
  if (res.aborted) summary["abort_reason"] = res.abort_reason;
  const std::string text =
      write_text(out_dir + "/branch_summary.json", summary.dump(2) + "\n");
  if (res.aborted)
    throw DivergenceError("continuation aborted: " + res.abort_reason, {});
  return text;
}

}  // namespace

std::string run_solve(const RunConfig& cfg, const std::string& out_dir) {
  return run_branch(cfg, out_dir, /*keep_all=*/false);
}

std::string run_continue(const RunConfig& cfg, const std::string& out_dir) {
  return run_branch(cfg, out_dir, /*keep_all=*/true);
}

std::string run_analyze(const RunConfig& cfg, const std::string& state_path,
                        const std::string& out_dir) {
  ensure_dir(out_dir);
  LoadedState st = load_state(state_path);

  // clamp requested orders to the loaded grid's resolution guards
  const int q_cap = st.h.grid().n_q / 4 - 2;
  const int p_cap = st.h.grid().n_p / 2 - 2;
  RegularityOptions opts;
  opts.m_max = std::max(3, std::min(cfg.diagnostics.m_max, q_cap));
  opts.mu = cfg.diagnostics.mu;
  opts.budget_total =
      std::max(2, std::min(cfg.diagnostics.order_budget_max, q_cap));
  opts.budget_p =
      std::max(0, std::min(cfg.diagnostics.order_budget_p_max, p_cap));
  opts.p_levels = cfg.diagnostics.p_levels;

  WaveParameters params = cfg.params;
  params.Q = st.meta.Q;
  RegularityReport rep = analyze_regularity(st.h, params, opts);

  json decay = json::array();
  const auto& g = st.h.grid();
  std::string csv = "# config_hash=" + hex64(cfg.config_hash) +
                    "\np_level,k,log_amplitude\n";
  for (const auto& d : rep.per_p_decay) {
    decay.push_back(json{{"p_level", d.p_level},
                         {"rate", d.rate},
                         {"intercept", d.intercept},
                         {"r2", d.r2},
                         {"n_modes", d.n_modes},
                         {"degenerate", d.degenerate}});
    const VectorXd w = g.cheb->interpolation_weights(d.p_level);
    VectorXd trace(g.n_q);
    for (int i = 0; i < g.n_q; ++i) trace(i) = w.dot(st.h.values().col(i));
    const VectorXd amp = g.trig->mode_amplitudes(trace);
    for (int k = 1; k < amp.size(); ++k)
      if (amp(k) > 0)
        csv += fmt(d.p_level) + "," + std::to_string(k) + "," +
               fmt(std::log(amp(k))) + "\n";
  }
  write_text(out_dir + "/decay_modes.csv", csv);

  json report = {{"command", "analyze"},
                 {"config_hash", hex64(cfg.config_hash)},
                 {"state", {{"Q", st.meta.Q},
                            {"amplitude", st.meta.amplitude},
                            {"residual_norm", st.meta.residual_norm}}},
                 {"per_p_decay", decay},
                 {"analyticity_half_width", rep.analyticity_half_width},
                 {"derivative_growth_ratios", rep.growth_ratios},
                 {"L_estimate", rep.L_estimate},
                 {"growth_tail_ok", rep.growth_tail_ok},
                 {"gevrey_index_hat", rep.gevrey_index_hat},
                 {"gevrey_fit_residual", rep.gevrey_fit_residual},
                 {"gevrey_degenerate", rep.gevrey_degenerate},
                 {"majorant_L1", rep.fm_L1},
                 {"majorant_L2", rep.fm_L2},
                 {"majorant_feasible", rep.fm_feasible},
                 {"mu", rep.mu},
                 {"m_max", rep.m_max}};
  return write_text(out_dir + "/regularity_report.json",
                    report.dump(2) + "\n");
}

std::string run_lemmas(const RunConfig& cfg, const std::string& out_dir,
                       int alpha_cap, int m_cap) {
  ensure_dir(out_dir);
  json table = json::array();

  {
    bool all_ok = true;
    double worst = 0.0;  // max sum/bound over the sweep
    for (int total = 2; total <= alpha_cap; ++total)
      for (int a1 = 0; a1 <= total; ++a1) {
        auto sums = ineq::multiindex_kernel_sums({a1, total - a1});
        for (const auto& s : sums) {
          all_ok = all_ok && s.ok;
          worst = std::max(worst, s.sum / s.bound);
        }
      }
    table.push_back(json{{"id", "multiindex_kernel_sums"},
                         {"range", "|alpha| <= " + std::to_string(alpha_cap)},
                         {"worst_margin", worst},
                         {"ok", all_ok}});
  }
  {
    bool all_ok = true;
    double worst = 0.0;
    for (int m = 2; m <= m_cap; ++m)
      for (int k : {2, 3}) {
        auto r = ineq::kernel_power_sum(m, k);
        all_ok = all_ok && r.ok;
        worst = std::max(worst, r.sum / r.bound);
      }
    table.push_back(json{{"id", "kernel_power_sum"},
                         {"range", "2 <= m <= " + std::to_string(m_cap)},
                         {"worst_margin", worst},
                         {"ok", all_ok}});
  }
  {
    bool all_ok = true;
    for (int a1 = 0; a1 <= 12; ++a1)
      for (int a2 = 0; a2 + a1 <= 12; ++a2)
        for (int b1 = 0; b1 <= a1; ++b1)
          for (int b2 = 0; b2 <= a2; ++b2)
            all_ok = all_ok &&
                     ineq::binomial_dominance_holds({a1, a2}, {b1, b2});
    table.push_back(json{{"id", "binomial_dominance"},
                         {"range", "|alpha| <= 12, all beta"},
                         {"worst_margin", all_ok ? 1.0 : 0.0},
                         {"ok", all_ok}});
  }
  {
    bool all_ok = true;
    for (int m = 0; m <= 40; ++m)
      for (int n = 0; n <= 40; ++n)
        for (double s : {1.0, 1.5, 2.0})
          all_ok = all_ok && ineq::factorial_superadditivity_holds(m, n, s);
    table.push_back(json{{"id", "factorial_superadditivity"},
                         {"range", "m, n <= 40; s in {1, 1.5, 2}"},
                         {"worst_margin", all_ok ? 1.0 : 0.0},
                         {"ok", all_ok}});
  }

  json verdict = {{"command", "lemmas"},
                  {"config_hash", hex64(cfg.config_hash)},
                  {"table", table}};
  return write_text(out_dir + "/lemmas_verdict.json", verdict.dump(2) + "\n");
}

}  // namespace strata
