// Copyright 2026 strata-wave authors
// SPDX-License-Identifier: Apache-2.0
//
// Batch front end over the C API: every subcommand reads one JSON run
// configuration, writes its artifacts into an output directory and exits
// with the status-code table documented in the README.

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "strata_wave.h"

namespace {

int finish(sw_status status, const char* what) {
  if (status == SW_OK) {
    std::printf("%s: ok\n", what);
    return 0;
  }
  std::fprintf(stderr, "%s: %s (%s)\n", what, sw_status_name(status),
               sw_last_error());
  return sw_status_exit_code(status);
}

struct ConfigHandle {
  sw_config* cfg = nullptr;
  ~ConfigHandle() { sw_config_free(cfg); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata-wave: steady stratified water waves on the hodograph "
               "strip, with regularity diagnostics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string state_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
  };

  CLI::App* laminar = app.add_subcommand("laminar", "solve the laminar flow");
  add_common(laminar);
  CLI::App* solve =
      app.add_subcommand("solve", "run the amplitude targets, keep the last state");
  add_common(solve);
  CLI::App* cont =
      app.add_subcommand("continue", "run the amplitude targets, keep every state");
  add_common(cont);
  CLI::App* analyze =
      app.add_subcommand("analyze", "regularity diagnostics of a saved state");
  add_common(analyze);
  analyze->add_option("state", state_path, "state file (.swf)")->required();
  CLI::App* lemmas =
      app.add_subcommand("lemmas", "combinatorial inequality sweeps");
  add_common(lemmas);

  CLI11_PARSE(app, argc, argv);

  ConfigHandle handle;
  sw_status st = sw_config_load(config_path.c_str(), &handle.cfg);
  if (st != SW_OK) return finish(st, "config");

  const char* out = out_dir.empty() ? nullptr : out_dir.c_str();
  if (laminar->parsed())
    return finish(sw_run_laminar(handle.cfg, out), "laminar");
  if (solve->parsed()) return finish(sw_run_solve(handle.cfg, out), "solve");
  if (cont->parsed()) return finish(sw_run_continue(handle.cfg, out), "continue");
  if (analyze->parsed())
    return finish(sw_run_analyze(handle.cfg, state_path.c_str(), out),
                  "analyze");
  if (lemmas->parsed()) return finish(sw_run_lemmas(handle.cfg, out), "lemmas");
  return 1;
}
