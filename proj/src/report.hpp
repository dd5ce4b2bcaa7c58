//===-- report.hpp ----------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Machine-readable result emission. Layout under the output directory:
//
//   summary.json                suite summary + run metadata
//   configs.json                every configuration's label and flag list
//   <benchmark>/profile.csv     one row per configuration, deltas vs. -O2
//   <benchmark>/profile.dat     plot-ready columns (label + three deltas)
//
// Output is deterministic: fixed key order, fixed float formatting
// (percentages with two decimals, raw values with six significant digits).
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_REPORT_HPP
#define OPTPREFIX_REPORT_HPP

#include "pipeline.hpp"
#include "selection.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace optprefix {

struct RunMetadata {
  std::string timestamp; // ISO-8601 UTC
  std::string toolchain_label;
  std::string pipeline_source;
  std::string level;
  std::string tool_version;
  std::string provider;
  std::string criteria;
  std::string flag_prefix;
  double epsilon_pct = 0.0;
  int repeats = 0;
  double min_run_s = 0.0;
  int warmups = 0;
  std::size_t configs_total = 0;    // including the empty -O0 config
  std::size_t configs_nonempty = 0; // one per transformation occurrence
};

/// Timestamp for report metadata: $SOURCE_DATE_EPOCH when set (reproducible
/// output), otherwise the current time.
std::string report_timestamp();
std::string format_timestamp(std::int64_t unix_seconds);

std::string emit_profile_csv(const CompilationProfile &profile);
std::string emit_plot_data(const CompilationProfile &profile);
std::string emit_summary(const SuiteSummary &summary, const RunMetadata &meta);
std::string emit_configs(const std::vector<OptConfig> &configs,
                         const std::string &flag_prefix);

/// Writes summary.json, configs.json and the per-benchmark files.
void write_report_bundle(const std::filesystem::path &out_dir,
                         const std::vector<CompilationProfile> &profiles,
                         const SuiteSummary &summary, const RunMetadata &meta,
                         const std::vector<OptConfig> &configs);

} // namespace optprefix

#endif // OPTPREFIX_REPORT_HPP
