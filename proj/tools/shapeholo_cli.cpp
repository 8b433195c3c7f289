// Copyright 2026 The Shapeholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// shapeholo: run or validate a scenario config.
//
// Exit codes: 0 success, 2 validation or I/O error, 3 numerical failure,
// 1 anything else.

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "shapeholo/shapeholo.h"

namespace {

int exit_code(sh_status s) {
  switch (s) {
    case SH_OK: return 0;
    case SH_ERR_INVALID_ARGUMENT:
    case SH_ERR_VALIDATION:
    case SH_ERR_IO: return 2;
    case SH_ERR_NUMERICAL: return 3;
    default: return 1;
  }
}

int report_failure(sh_status s) {
  std::fprintf(stderr, "shapeholo: %s: %s\n", sh_status_name(s), sh_last_error());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wilczek-Zee holonomies of deformable triangles: scenario runner"};
  app.set_version_flag("--version", std::string("shapeholo ") + sh_version());
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Run a scenario and write its outputs plus manifest.json");
  run->add_option("config", config, "Scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (default: config output_dir, then $SHAPEHOLO_OUT_DIR, then ./shapeholo_out)");
  run->add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Seed for randomized sweeps (overrides the config)");

  auto* validate = app.add_subcommand("validate", "Check a config without running it or writing anything");
  validate->add_option("config", config, "Scenario config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  sh_report* report = nullptr;
  if (*run) {
    const sh_status s = sh_run_config(config.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(), threads,
                                      seed_opt->count() > 0 ? 1 : 0, seed, &report);
    if (s != SH_OK) return report_failure(s);
    std::printf("ok: %s -> %s\n", sh_report_scenario(report), sh_report_out_dir(report));
    for (size_t i = 0; i < sh_report_count(report); ++i) std::printf("  %s\n", sh_report_item(report, i));
  } else {
    const sh_status s = sh_validate_config(config.c_str(), &report);
    if (s != SH_OK) return report_failure(s);
    std::printf("pass: %s\n", sh_report_scenario(report));
    for (size_t i = 0; i < sh_report_count(report); ++i) std::printf("  %s\n", sh_report_item(report, i));
  }
  sh_report_free(report);
  return 0;
}
