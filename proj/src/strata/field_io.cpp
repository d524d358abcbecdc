// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0

#include "strata/field_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "strata/config.hpp"
#include "strata/errors.hpp"

namespace strata {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

}  // namespace

void save_state(const std::string& path, const HeightField& h,
                const StateMeta& meta) {
  const auto& g = h.grid();
  const int n = g.n_p * g.n_q;
  std::string payload(static_cast<size_t>(n) * sizeof(double), '\0');
  {
    auto* out = reinterpret_cast<double*>(payload.data());
    for (int j = 0; j < g.n_p; ++j)
      for (int i = 0; i < g.n_q; ++i) *out++ = h.values()(j, i);
  }
  json header = {
      {"magic", "strata-wave-state"},
      {"version", 1},
      {"n_q", g.n_q},
      {"n_p", g.n_p},
      {"wavelength", g.lambda},
      {"p0", g.p0},
      {"Q", meta.Q},
      {"amplitude", meta.amplitude},
      {"residual_norm", meta.residual_norm},
      {"config_hash", hex64(meta.config_hash)},
      {"payload_fnv", hex64(fnv1a(payload.data(), payload.size()))},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::generic, "cannot write state file: " + path);
  out << header.dump() << '\n';
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

LoadedState load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::generic, "cannot open state file: " + path);
  std::string header_line;
  if (!std::getline(in, header_line))
    throw ChecksumError("state file has no header line");
  json header;
  try {
    header = json::parse(header_line);
  } catch (const std::exception&) {
    throw ChecksumError("state header is not valid JSON");
  }
  if (!header.contains("magic") || header["magic"] != "strata-wave-state")
    throw ChecksumError("not a strata-wave state file");
  const int n_q = header.at("n_q").get<int>();
  const int n_p = header.at("n_p").get<int>();
  const double lambda = header.at("wavelength").get<double>();
  const double p0 = header.at("p0").get<double>();

  std::string payload(static_cast<size_t>(n_q) * n_p * sizeof(double), '\0');
  in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size()))
    throw ChecksumError("state payload is truncated");
  const std::uint64_t want = parse_hex64(header.at("payload_fnv"));
  if (fnv1a(payload.data(), payload.size()) != want)
    throw ChecksumError("state payload checksum mismatch");

  Eigen::MatrixXd values(n_p, n_q);
  {
    const auto* src = reinterpret_cast<const double*>(payload.data());
    for (int j = 0; j < n_p; ++j)
      for (int i = 0; i < n_q; ++i) values(j, i) = *src++;
  }
  StateMeta meta;
  meta.Q = header.at("Q").get<double>();
  meta.amplitude = header.at("amplitude").get<double>();
  meta.residual_norm = header.at("residual_norm").get<double>();
  meta.config_hash = parse_hex64(header.at("config_hash"));
  return LoadedState{HeightField(StripGrid(n_q, n_p, lambda, p0),
                                 std::move(values)),
                     meta};
}

}  // namespace strata
