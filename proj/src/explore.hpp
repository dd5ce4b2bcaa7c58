//===-- explore.hpp ---------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The exploration loop: emit IR once per benchmark, then per configuration
// optimize, build, validate, measure (calibrating once per benchmark on the
// baseline executable), build compilation profiles, select the best
// configuration and write the report bundle. Builds run in parallel up to a
// jobs limit; measured runs are globally serialized. Re-running over an
// existing work directory reuses artifacts and measurements.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_EXPLORE_HPP
#define OPTPREFIX_EXPLORE_HPP

#include "config_file.hpp"
#include "report.hpp"
#include "selection.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace optprefix {

struct ExploreOptions {
  std::optional<std::filesystem::path> out_dir; // overrides the config
  std::optional<int> jobs;                      // overrides the config
  std::optional<std::string> fixed_timestamp;   // reproducible reports
  std::ostream *progress = nullptr;             // optional progress log
};

struct ExploreOutcome {
  std::vector<CompilationProfile> profiles;
  SuiteSummary summary;
  std::filesystem::path out_dir;
  std::size_t benchmarks_total = 0;
  std::size_t benchmarks_completed = 0;
  std::size_t builds_performed = 0;
  std::size_t builds_reused = 0;
  std::size_t measurements_performed = 0;
  std::size_t measurements_reused = 0;
  std::vector<std::string> failures; // one note per failed benchmark

  bool all_failed() const {
    return benchmarks_total > 0 && benchmarks_completed == 0;
  }
};

ExploreOutcome run_exploration(const ExplorationConfig &config,
                               const ExploreOptions &options = {});

/// Re-runs best-config selection over an existing report bundle without
/// re-measuring. Returns one line per benchmark: name, best label, and the
/// exact ordered flag list (tab separated). Throws ConfigError when the
/// reports are missing.
std::string run_selection(const std::filesystem::path &out_dir,
                          std::span<const Criterion> criteria,
                          double epsilon_pct);

struct MockDemoResult {
  std::filesystem::path root;    // demo workspace
  std::filesystem::path out_dir; // report bundle within the workspace
  std::string summary_json;
  ExploreOutcome outcome;
};

/// Generates a pipeline, a cost model and a small benchmark corpus from the
/// seed, explores them with the mock toolchain, and returns the summary.
/// Identical seeds produce byte-identical summaries.
MockDemoResult
run_mock_demo(std::uint64_t seed,
              std::optional<std::filesystem::path> root_dir = {},
              std::optional<std::filesystem::path> mockc_binary = {},
              std::ostream *progress = nullptr);

} // namespace optprefix

#endif // OPTPREFIX_EXPLORE_HPP
