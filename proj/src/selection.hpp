//===-- selection.hpp -------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Improvement percentages against the baseline level and lexicographic
// best-configuration selection: execution time first, ties broken by energy,
// then code size, then by the configuration closest to the standard level.
// Negative percentages are improvements.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_SELECTION_HPP
#define OPTPREFIX_SELECTION_HPP

#include "measure.hpp"
#include "toolchain.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace optprefix {

enum class Criterion { Time, Energy, Size };

inline constexpr Criterion kDefaultCriteria[] = {Criterion::Time,
                                                 Criterion::Energy,
                                                 Criterion::Size};

/// Parses "time,energy,size" (any permutation); throws ConfigError.
std::vector<Criterion> parse_criteria(std::string_view text);
std::string criteria_to_string(std::span<const Criterion> criteria);

struct ConfigResult {
  std::size_t config_index = 0;
  std::string label;
  std::size_t total_flags = 0;
  BuildStatus status = BuildStatus::CompileFailed;
  std::optional<ResourceMeasurement> measurement;
  // Signed percentages vs. the baseline config, rounded to two decimals
  // (the precision every report carries); absent when the underlying
  // quantity is absent.
  std::optional<double> d_time_pct;
  std::optional<double> d_energy_pct;
  std::optional<double> d_size_pct;
};

struct CompilationProfile {
  std::string benchmark;
  std::size_t baseline_config_index = 0;
  std::vector<ConfigResult> results; // ordered by config_index
  std::size_t best_config_index = 0;
};

struct SuiteSummary {
  struct BenchmarkBest {
    std::string name;
    std::size_t best_index = 0;
    std::string best_label;
    std::optional<double> d_time_pct;
    std::optional<double> d_energy_pct;
    std::optional<double> d_size_pct;
  };

  std::vector<BenchmarkBest> per_benchmark;
  double mean_time_improvement_pct = 0.0; // across all benchmarks
  std::size_t improved_count = 0;         // best d_time_pct <= -1%
  std::size_t benchmark_count = 0;
  std::optional<double> min_time_improvement_pct; // most negative best delta
  std::optional<double> max_time_improvement_pct;
  std::size_t configs_tested = 0;
  std::size_t configs_built = 0; // compiled, including validation failures
  std::size_t configs_valid = 0; // Built: compiled and passed validation
};

/// (value - baseline) / baseline * 100. Throws SelectionError when
/// baseline <= 0 (a broken baseline measurement).
double improvement_pct(double value, double baseline);

/// Rounding applied to every reported percentage (two decimals); selection
/// operates on these rounded values so reports and re-selection agree
/// exactly.
double round_pct(double pct);

/// Lexicographic minimization over the criteria's deltas. Candidates within
/// epsilon_pct of a tier's minimum advance to the next tier; tiers whose
/// values are absent are skipped; the final tie goes to the largest
/// config_index (closest to the standard level). Throws SelectionError when
/// no candidate is Built and measured.
std::size_t select_best(const std::vector<ConfigResult> &results,
                        double epsilon_pct = 0.0,
                        std::span<const Criterion> criteria = kDefaultCriteria);

/// Computes every delta against the baseline result and fills
/// best_config_index. Throws SelectionError when the baseline is not Built
/// and measured.
CompilationProfile
build_profile(std::string benchmark, std::vector<ConfigResult> results,
              std::size_t baseline_index, double epsilon_pct = 0.0,
              std::span<const Criterion> criteria = kDefaultCriteria);

/// Aggregates best-config deltas across a suite; the mean includes
/// non-improved benchmarks.
SuiteSummary summarize(const std::vector<CompilationProfile> &profiles);

} // namespace optprefix

#endif // OPTPREFIX_SELECTION_HPP
