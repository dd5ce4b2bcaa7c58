//===-- pipeline.hpp --------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A standard optimization level's pass pipeline and the family of prefix
// configurations derived from it. A pipeline is an ordered list of
// transformation and analysis pass occurrences; a configuration is the
// literal prefix of that list ending at some transformation (or the empty
// prefix, equivalent to no optimization at all). Configurations never
// permute, insert, or repeat passes.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_PIPELINE_HPP
#define OPTPREFIX_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace optprefix {

enum class PassKind { Transformation, Analysis };

struct PassEntry {
  std::string name;
  PassKind kind = PassKind::Transformation;
  std::size_t position = 0;   // 0-based index within the pipeline
  std::size_t occurrence = 1; // 1-based ordinal among same-named entries

  friend bool operator==(const PassEntry &, const PassEntry &) = default;
};

/// One entry per line: a kind tag ("T" or "A"), one space, the pass name.
/// Blank lines and lines starting with '#' are ignored.
class PassPipeline {
public:
  PassPipeline() = default;

  /// Parses the pipeline file format. Throws ParseError naming the
  /// offending 1-based line number.
  static PassPipeline parse(std::string_view text);

  static PassPipeline load(const std::filesystem::path &file);

  /// Builds a pipeline from (name, kind) pairs; positions and occurrences
  /// are computed. Used by generators and tests.
  static PassPipeline
  from_passes(const std::vector<std::pair<std::string, PassKind>> &passes);

  /// Emits the same format parse() accepts; parse(serialize()) round-trips.
  std::string serialize() const;

  const std::vector<PassEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Number of Transformation entries; determines the number of non-empty
  /// configurations.
  std::size_t transformation_count() const;

  /// Free-form identification of compiler + level, e.g. "llvm-5.0 -O2".
  std::string source_label;
  /// The standard level being exploited, e.g. "-O2".
  std::string level{"-O2"};

private:
  std::vector<PassEntry> entries_;
};

/// One prefix configuration: the ordered pass names retained after a
/// truncation point.
struct OptConfig {
  std::size_t index = 0;           // transformation passes retained; 0 = none
  std::vector<std::string> flags;  // literal prefix of the pipeline names
  std::string last_transformation; // empty when index == 0

  std::size_t total_flags() const { return flags.size(); }

  /// Display label: "<last_transformation> (<total_flags>)", or "-O0 (0)"
  /// for the empty configuration.
  std::string label() const;
};

/// Generates transformation_count + 1 configurations ordered by ascending
/// index. Config 0 is empty; config i ends at the i-th transformation
/// occurrence and keeps every entry before it. Analyses after the final
/// retained transformation are dropped.
std::vector<OptConfig> generate_configs(const PassPipeline &pipeline);

} // namespace optprefix

#endif // OPTPREFIX_PIPELINE_HPP
