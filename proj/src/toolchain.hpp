//===-- toolchain.hpp -------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Drives an external compiler toolchain as a black box through four command
// templates: frontend (source -> unoptimized IR, run once per benchmark),
// optimizer (IR + pass list -> optimized IR, run once per configuration),
// backend and linker (always invoked at the fixed exploration level).
//
// Template placeholders:
//   {input} {output}  input/output paths; {input} splices multiple sources
//   {passes}          ordered per-config pass flags; as a standalone token it
//                     splices one argv entry per flag, embedded in a larger
//                     token it expands to a comma-joined list
//   {passes+}         like {passes} but marks the list required-nonempty:
//                     the optimizer step is skipped for the empty config
//   {level}           the fixed exploration level, e.g. "-O2"
//   {extra}           reserved for user additions, empty by default
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_TOOLCHAIN_HPP
#define OPTPREFIX_TOOLCHAIN_HPP

#include "pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace optprefix {

struct ToolchainSpec {
  std::string frontend_cmd;
  std::string optimizer_cmd;
  std::string backend_cmd;
  std::string link_cmd;
  std::string level = "-O2";
  std::string flag_prefix = "-";
  std::filesystem::path work_dir;
  std::optional<std::string> size_cmd; // parsed as key=value section sizes
  std::string extra;

  /// Checks required placeholders: {input}/{output} in every template,
  /// {passes} in optimizer_cmd, {level} in backend_cmd and link_cmd.
  /// Throws ConfigError.
  void validate() const;
};

struct BenchmarkSpec {
  std::string name;
  std::vector<std::filesystem::path> sources;
  std::string run_cmd;                    // placeholders {exe}, {loops}
  std::optional<std::string> validate_cmd; // placeholder {exe}
  int expected_exit = 0;
};

enum class BuildStatus { Built, CompileFailed, ValidationFailed, Unmeasured };

std::string_view to_string(BuildStatus status);
std::optional<BuildStatus> build_status_from_string(std::string_view text);

struct BuildArtifact {
  std::string benchmark;
  std::size_t config_index = 0;
  std::filesystem::path executable_path; // set iff Built or ValidationFailed
  std::filesystem::path ir_path;
  std::string build_log;
  BuildStatus status = BuildStatus::CompileFailed;
  std::string failure_reason;
};

/// Expands a command template into an argv vector. `subst` maps plain
/// placeholders ({input}, {output}, {level}, {exe}, ...) to replacement
/// text; {input} listed in `splice` expands to multiple argv entries.
std::vector<std::string>
expand_command(std::string_view templ,
               const std::map<std::string, std::string> &subst,
               const std::map<std::string, std::vector<std::string>> &splice =
                   {});

/// Renders a config's pass list with the toolchain's flag prefix, in
/// pipeline order.
std::vector<std::string> render_pass_flags(const OptConfig &config,
                                           const std::string &flag_prefix);

/// True when the template uses {passes+}, requesting that the optimizer be
/// skipped entirely for the empty configuration.
bool passes_required_nonempty(std::string_view templ);

/// Stable content hash of a benchmark's sources (names + bytes); keys the
/// unoptimized-IR cache.
std::uint64_t hash_sources(const std::vector<std::filesystem::path> &sources);

class ToolchainDriver {
public:
  explicit ToolchainDriver(ToolchainSpec spec);

  /// Runs the frontend once per (benchmark, source-content) pair; the
  /// resulting IR file is cached in work_dir and reused on later calls.
  /// Appends command transcripts to `log`. Throws ToolchainError.
  std::filesystem::path emit_unoptimized_ir(const BenchmarkSpec &bench,
                                            std::string *log = nullptr);

  /// Applies one configuration's pass list to the unoptimized IR.
  std::filesystem::path optimize(const std::filesystem::path &ir_path,
                                 const OptConfig &config,
                                 const std::string &bench_name,
                                 std::string *log = nullptr);

  /// Backend then linker, both at the fixed exploration level.
  std::filesystem::path build_executable(const std::filesystem::path &opt_ir,
                                         const std::string &bench_name,
                                         std::size_t config_index,
                                         std::string *log = nullptr);

  /// Runs validate_cmd, or run_cmd checking expected_exit when absent.
  BuildStatus validate(const std::filesystem::path &exe,
                       const BenchmarkSpec &bench, double timeout_s = 60.0,
                       std::string *reason = nullptr,
                       std::string *log = nullptr);

  const ToolchainSpec &spec() const { return spec_; }

  /// Scratch directory for one configuration: work_dir/<bench>/<index>/.
  std::filesystem::path config_dir(const std::string &bench_name,
                                   std::size_t config_index) const;

private:
  std::filesystem::path bench_dir(const std::string &bench_name) const;
  ToolchainSpec spec_;
};

} // namespace optprefix

#endif // OPTPREFIX_TOOLCHAIN_HPP
