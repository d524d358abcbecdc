// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "strata/errors.hpp"

namespace strata {

using nlohmann::json;

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double need_number(const json& obj, const std::string& where,
                   const std::string& key) {
  if (!obj.contains(key))
    throw ConfigError(where + " is missing '" + key + "'");
  if (!obj[key].is_number())
    throw ConfigError(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& where,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

std::vector<double> opt_array(const json& obj, const std::string& where,
                              const std::string& key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array())
    throw ConfigError(where + "." + key + " must be an array");
  for (const auto& v : obj[key]) {
    if (!v.is_number())
      throw ConfigError(where + "." + key + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

CoefficientFunction parse_coefficient(const json& obj, const std::string& where,
                                      double default_p0) {
  require_keys(obj, where, {"kind", "coeffs", "den", "p0", "s", "M"});
  if (!obj.contains("kind") || !obj["kind"].is_string())
    throw ConfigError(where + " needs a string 'kind'");
  const auto kind = coefficient_kind_from_string(obj["kind"].get<std::string>());
  std::vector<double> coeffs = opt_array(obj, where, "coeffs");
  if (coeffs.empty()) throw ConfigError(where + " needs nonempty 'coeffs'");
  std::vector<double> den = opt_array(obj, where, "den");
  const double p0 = opt_number(obj, where, "p0", default_p0);
  std::optional<double> s, M;
  if (obj.contains("s")) s = need_number(obj, where, "s");
  if (obj.contains("M")) M = need_number(obj, where, "M");
  try {
    return CoefficientFunction(kind, std::move(coeffs), p0, std::move(den), s,
                               M);
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(root, "config",
               {"params", "grid", "solver", "diagnostics", "output_dir"});
  if (!root.contains("params"))
    throw ConfigError("config is missing 'params'");
  const json& jp = root["params"];
  require_keys(jp, "params",
               {"g", "sigma", "Q", "d", "p0", "wavelength", "rho", "beta"});
  const double p0 = need_number(jp, "params", "p0");
  if (!(p0 < 0)) throw ConfigError("params.p0 must be negative");
  if (!jp.contains("rho") || !jp.contains("beta"))
    throw ConfigError("params needs 'rho' and 'beta'");
  CoefficientFunction rho = parse_coefficient(jp["rho"], "params.rho", p0);
  CoefficientFunction beta = parse_coefficient(jp["beta"], "params.beta", p0);

  WaveParameters params(need_number(jp, "params", "g"),
                        need_number(jp, "params", "sigma"),
                        opt_number(jp, "params", "Q", 0.0),
                        need_number(jp, "params", "d"), std::move(rho),
                        std::move(beta),
                        need_number(jp, "params", "wavelength"), p0);

  RunConfig cfg{std::move(params)};
  if (root.contains("grid")) {
    const json& jg = root["grid"];
    require_keys(jg, "grid", {"n_q", "n_p"});
    cfg.n_q = static_cast<int>(opt_number(jg, "grid", "n_q", 64));
    cfg.n_p = static_cast<int>(opt_number(jg, "grid", "n_p", 32));
  }
  if (cfg.n_q < 4 || cfg.n_q % 2 != 0)
    throw ConfigError("grid.n_q must be even and >= 4");
  if (cfg.n_p < 4) throw ConfigError("grid.n_p must be >= 4");

  if (root.contains("solver")) {
    const json& js = root["solver"];
    require_keys(js, "solver",
                 {"tol", "max_iter", "kappa0", "kappa_range",
                  "amplitude_targets"});
    cfg.solver.tol = opt_number(js, "solver", "tol", 1e-10);
    cfg.solver.max_iter =
        static_cast<int>(opt_number(js, "solver", "max_iter", 25));
    cfg.solver.kappa0 = opt_number(js, "solver", "kappa0", 1.0);
    auto kr = opt_array(js, "solver", "kappa_range");
    if (!kr.empty()) {
      if (kr.size() != 2 || !(kr[0] < kr[1]))
        throw ConfigError("solver.kappa_range must be [lo, hi] with lo < hi");
      cfg.solver.kappa_range = {kr[0], kr[1]};
    }
    cfg.solver.amplitude_targets = opt_array(js, "solver", "amplitude_targets");
  }
  if (!(cfg.solver.tol > 0)) throw ConfigError("solver.tol must be positive");
  if (!(cfg.solver.kappa0 > 0))
    throw ConfigError("solver.kappa0 must be positive");

  if (root.contains("diagnostics")) {
    const json& jd = root["diagnostics"];
    require_keys(jd, "diagnostics",
                 {"m_max", "mu", "order_budget_max", "order_budget_p_max",
                  "k_max", "p_levels"});
    cfg.diagnostics.m_max =
        static_cast<int>(opt_number(jd, "diagnostics", "m_max", 12));
    cfg.diagnostics.mu = opt_number(jd, "diagnostics", "mu", 0.5);
    cfg.diagnostics.order_budget_max = static_cast<int>(
        opt_number(jd, "diagnostics", "order_budget_max", 8));
    cfg.diagnostics.order_budget_p_max = static_cast<int>(
        opt_number(jd, "diagnostics", "order_budget_p_max", 6));
    cfg.diagnostics.k_max =
        static_cast<int>(opt_number(jd, "diagnostics", "k_max", 30));
    cfg.diagnostics.p_levels = opt_array(jd, "diagnostics", "p_levels");
    for (double p : cfg.diagnostics.p_levels)
      if (!(p >= cfg.params.p0 && p <= 0.0))
        throw ConfigError("diagnostics.p_levels must lie in [p0, 0]");
  }
  if (!(cfg.diagnostics.mu > 0 && cfg.diagnostics.mu < 1))
    throw ConfigError("diagnostics.mu must lie in (0,1)");

  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string())
      throw ConfigError("output_dir must be a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }

  // canonical hash: the parsed JSON re-serialized with sorted keys
  const std::string canon = root.dump();
  cfg.config_hash = fnv1a(canon.data(), canon.size());
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace strata
