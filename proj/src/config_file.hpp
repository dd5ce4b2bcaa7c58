//===-- config_file.hpp -----------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The exploration configuration file: flat key = value lines grouped into
// sections. Top-level keys come first; [toolchain], [plan] and [provider]
// appear at most once; every [benchmark] section defines one benchmark
// (the "source" key repeats for multi-file benchmarks). '#' lines are
// comments. Relative paths resolve against the config file's directory.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_CONFIG_FILE_HPP
#define OPTPREFIX_CONFIG_FILE_HPP

#include "measure.hpp"
#include "selection.hpp"
#include "toolchain.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace optprefix {

struct ProviderSpec {
  std::string kind = "timer"; // timer | command | synthetic
  std::string command;        // for kind = command
};

struct ExplorationConfig {
  std::filesystem::path pipeline_file;
  std::string pipeline_label; // optional override of the pipeline's label
  ToolchainSpec toolchain;
  std::vector<BenchmarkSpec> benchmarks;
  MeasurementPlan plan;
  ProviderSpec provider;
  double epsilon_pct = 0.0;
  int jobs = 1;
  std::filesystem::path out_dir = "out";
  std::vector<Criterion> criteria{kDefaultCriteria,
                                  kDefaultCriteria + 3};
  double validate_timeout_s = 60.0;

  static ExplorationConfig load(const std::filesystem::path &file);
  static ExplorationConfig parse(std::string_view text,
                                 const std::filesystem::path &base_dir);

  /// Existence and sanity checks beyond syntax. Throws ConfigError.
  void validate() const;
};

} // namespace optprefix

#endif // OPTPREFIX_CONFIG_FILE_HPP
