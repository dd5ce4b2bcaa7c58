//===-- mock_model.hpp ------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// A deterministic cost model backing the mock toolchain: every benchmark
// has a base resource triple (time, energy, size) at zero passes, and each
// pipeline position carries a multiplicative factor triple. Resources for a
// configuration are the base times the product of the factors of every
// retained position, so prefixes compose incrementally and values stay
// positive. The whole model is a pure function of its seed.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_MOCK_MODEL_HPP
#define OPTPREFIX_MOCK_MODEL_HPP

#include "pipeline.hpp"
#include "toolchain.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace optprefix {

struct ResourceTriple {
  double time_s = 0.0;
  double energy_j = 0.0;
  double size_b = 0.0;
};

struct FactorTriple {
  double time = 1.0;
  double energy = 1.0;
  double size = 1.0;
};

class CostModel {
public:
  std::uint64_t seed = 0;
  /// Per-benchmark resources of the empty configuration.
  std::map<std::string, ResourceTriple> base;
  /// factors[bench][pipeline position] -> multiplicative triple; positions
  /// with no entry are neutral (all 1.0). Analysis positions stay neutral.
  std::map<std::string, std::map<std::size_t, FactorTriple>> factors;
  /// Configurations forced to fail their self-test, identified by
  /// (benchmark, flag count) -- flag counts are unique per config.
  std::set<std::pair<std::string, std::size_t>> invalid;

  bool covers(const std::string &bench) const { return base.count(bench) > 0; }

  /// base x product of the factors of every position < flag_count, in
  /// ascending position order. Throws ModelError on an unknown benchmark.
  ResourceTriple resources_for_flag_count(const std::string &bench,
                                          std::size_t flag_count) const;

  /// Resources of one configuration (its flags occupy positions
  /// 0..total_flags-1 of the pipeline).
  ResourceTriple resources(const std::string &bench,
                           const OptConfig &config) const;

  void mark_invalid(const std::string &bench, const OptConfig &config);
  bool is_invalid(const std::string &bench, std::size_t flag_count) const;

  /// Deterministically draws a model for the given pipeline and benchmarks.
  /// Transformations mostly help (factor < 1) but sometimes hurt, energy
  /// tracks time with a small jitter, and size factors stay near 1. Every
  /// generated model has at least one benchmark whose final transformation
  /// hurts, so an interior prefix wins somewhere.
  static CostModel generate(std::uint64_t seed, const PassPipeline &pipeline,
                            const std::vector<std::string> &benchmarks);

  /// Key-value fixture format; load(save(m)) reproduces m exactly.
  void save(const std::filesystem::path &file) const;
  static CostModel load(const std::filesystem::path &file);
};

/// Command templates and a provider kind wiring the mock toolchain binary
/// into the ordinary driver: build steps write mock binaries, the synthetic
/// provider decodes them.
struct MockToolchain {
  ToolchainSpec toolchain;
  std::string provider_kind = "synthetic";
};

MockToolchain make_mock_toolchain(const std::filesystem::path &mockc_binary,
                                  const std::filesystem::path &model_file,
                                  const std::filesystem::path &work_dir);

/// Run command for a mock benchmark (used for validation).
std::string mock_run_command(const std::filesystem::path &mockc_binary);

/// Locates the mock toolchain binary: $OPTPREFIX_MOCKC, then next to the
/// current executable, then $PATH. Throws ConfigError when not found.
std::filesystem::path find_mockc_binary();

} // namespace optprefix

#endif // OPTPREFIX_MOCK_MODEL_HPP
