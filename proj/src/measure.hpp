//===-- measure.hpp ---------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Execution-time, energy and code-size measurement with calibration and
// repetition. Providers are pluggable: a monotonic wall-clock timer, an
// external command reporting a JSON sample (the hook for a hardware energy
// probe), and a synthetic provider that decodes mock binaries.
//
// Measured runs are globally exclusive: a process-wide token serializes
// them even when builds run in parallel.
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_MEASURE_HPP
#define OPTPREFIX_MEASURE_HPP

#include "toolchain.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace optprefix {

struct ResourceMeasurement {
  double exec_time_s = 0.0; // per single benchmark iteration
  std::optional<double> energy_j;    // per iteration, when the provider reports it
  std::optional<double> avg_power_w;
  std::uint64_t code_size_b = 0;
  int repeats = 0;
  std::uint64_t loop_count = 1;
};

struct MeasurementPlan {
  int repeats = 5;
  double min_run_s = 0.5; // calibration floor for one measured run
  int warmups = 1;
};

class MeasurementProvider {
public:
  /// Totals for one measured run of loop_count iterations.
  struct Sample {
    double time_s = 0.0;
    std::optional<double> energy_j;
    std::optional<double> power_w;
  };

  virtual ~MeasurementProvider() = default;

  /// Executes the benchmark once with loop_count iterations and returns the
  /// run's totals. Throws MeasureError on failure.
  virtual Sample run(const std::filesystem::path &exe,
                     const BenchmarkSpec &bench, std::uint64_t loop_count) = 0;

  virtual std::string_view name() const = 0;
};

/// Wall-clock timer around the benchmark's run command. When run_cmd has a
/// {loops} placeholder the command is invoked once; otherwise it is invoked
/// loop_count times and the wall time is summed.
std::unique_ptr<MeasurementProvider> make_timer_provider();

/// Runs `command` (placeholders {exe}, {loops}) and parses one JSON object
/// from its stdout: {"time_s": ..., "energy_j": ..., "power_w": ...};
/// time_s is required, a nonzero exit is a failure.
std::unique_ptr<MeasurementProvider>
make_command_provider(std::string command);

/// Decodes mock binaries ("time_s=... energy_j=... size_b=..." text) and
/// scales by loop_count; never executes anything.
std::unique_ptr<MeasurementProvider> make_synthetic_provider();

std::unique_ptr<MeasurementProvider>
make_provider(const std::string &kind, const std::string &command = {});

/// Calibration cap: loop counts never exceed 2^20.
inline constexpr std::uint64_t kMaxLoopCount = 1ull << 20;

/// Finds the smallest power-of-two loop count whose single measured run
/// lasts at least plan.min_run_s, capped at 2^20 (with a warning on the
/// warnings sink when capped).
std::uint64_t calibrate(const std::filesystem::path &exe,
                        const BenchmarkSpec &bench,
                        MeasurementProvider &provider,
                        const MeasurementPlan &plan,
                        std::string *warning = nullptr);

/// Runs plan.warmups unmeasured runs then plan.repeats measured runs;
/// per-iteration figures are the median over repeats divided by loop_count.
/// Code size comes from code_size() with the optional size command.
ResourceMeasurement measure(const std::filesystem::path &exe,
                            const BenchmarkSpec &bench,
                            MeasurementProvider &provider,
                            const MeasurementPlan &plan,
                            std::uint64_t loop_count,
                            const std::optional<std::string> &size_cmd = {});

/// Sum of loadable-section sizes parsed from size_cmd output (whitespace
/// separated key=value integers), or the file length when size_cmd is
/// absent.
std::uint64_t code_size(const std::filesystem::path &exe,
                        const std::optional<std::string> &size_cmd = {});

double median(std::vector<double> values);

} // namespace optprefix

#endif // OPTPREFIX_MEASURE_HPP
