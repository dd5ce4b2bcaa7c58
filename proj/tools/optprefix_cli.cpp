//===-- optprefix_cli.cpp -------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Command-line front end over the optprefix C API.
//
//   optprefix explore --config FILE [--jobs N] [--out DIR] [--quiet]
//   optprefix select --out DIR [--criteria time,energy,size] [--epsilon PCT]
//   optprefix mock-demo [--seed N] [--out DIR] [--quiet]
//   optprefix --version
//
// Exit codes: 0 success (including partial per-config failures, which are
// recorded in the reports), 1 when nothing completed, 2 for configuration
// and usage errors.
//
//===----------------------------------------------------------------------===//

#include <optprefix.h>

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

namespace {

int exit_code_for(optprefix_status status) {
  switch (status) {
  case OPTPREFIX_OK:
    return 0;
  case OPTPREFIX_ERR_PARSE:
  case OPTPREFIX_ERR_CONFIG:
  case OPTPREFIX_ERR_INVALID:
    return 2;
  default:
    return 1;
  }
}

int report_failure(optprefix_status status) {
  std::cerr << "optprefix: " << optprefix_last_error() << "\n";
  return exit_code_for(status);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exploration of standard optimization-level prefixes"};
  app.set_version_flag("--version",
                       std::string("optprefix ") + optprefix_version());
  app.require_subcommand(1);

  // explore
  std::string config_path;
  std::string out_dir;
  int jobs = 0;
  bool quiet = false;
  CLI::App *explore =
      app.add_subcommand("explore", "Compile, measure and rank every prefix "
                                    "configuration of a pass pipeline");
  explore->add_option("--config", config_path, "Exploration config file")
      ->required();
  explore->add_option("--jobs", jobs, "Parallel build limit")
      ->envname("OPTPREFIX_JOBS");
  explore->add_option("--out", out_dir, "Report output directory")
      ->envname("OPTPREFIX_OUT");
  explore->add_flag("--quiet", quiet, "Suppress progress output");

  // select
  std::string select_out;
  std::string criteria;
  double epsilon = 0.0;
  CLI::App *select = app.add_subcommand(
      "select", "Re-rank an existing report bundle without re-measuring");
  select->add_option("--out", select_out, "Report directory of a past run")
      ->required();
  select->add_option("--criteria", criteria,
                     "Comma-separated order of time,energy,size");
  select->add_option("--epsilon", epsilon,
                     "Tie tolerance in percent for each criterion");

  // mock-demo
  std::uint64_t seed = 42;
  std::string demo_out;
  bool demo_quiet = false;
  CLI::App *demo = app.add_subcommand(
      "mock-demo", "Self-contained exploration against the mock toolchain");
  demo->add_option("--seed", seed, "Model seed");
  demo->add_option("--out", demo_out, "Demo workspace directory")
      ->envname("OPTPREFIX_OUT");
  demo->add_flag("--quiet", demo_quiet, "Suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (explore->parsed()) {
    optprefix_status status =
        optprefix_explore(config_path.c_str(),
                          out_dir.empty() ? nullptr : out_dir.c_str(), jobs,
                          quiet ? 0 : 1);
    if (status != OPTPREFIX_OK)
      return report_failure(status);
    return 0;
  }

  if (select->parsed()) {
    char *text = nullptr;
    optprefix_status status =
        optprefix_select(select_out.c_str(),
                         criteria.empty() ? nullptr : criteria.c_str(),
                         epsilon, &text);
    if (status != OPTPREFIX_OK)
      return report_failure(status);
    std::cout << text;
    optprefix_string_free(text);
    return 0;
  }

  if (demo->parsed()) {
    char *summary = nullptr;
    optprefix_status status =
        optprefix_mock_demo(seed, demo_out.empty() ? nullptr : demo_out.c_str(),
                            demo_quiet ? 0 : 1, &summary);
    if (status != OPTPREFIX_OK)
      return report_failure(status);
    std::cout << summary;
    optprefix_string_free(summary);
    return 0;
  }

  return 2;
}
