//===-- measure.cpp -------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "measure.hpp"

#include "errors.hpp"
#include "process.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace optprefix {

namespace fs = std::filesystem;

namespace {

// The global exclusivity token: at most one measured run at any time.
std::mutex &measurement_token() {
  static std::mutex token;
  return token;
}

class TimerProvider final : public MeasurementProvider {
public:
  Sample run(const fs::path &exe, const BenchmarkSpec &bench,
             std::uint64_t loop_count) override {
    if (bench.run_cmd.empty())
      throw MeasureError("benchmark " + bench.name + " has no run command");
    Sample sample;
    bool has_loops =
        bench.run_cmd.find("{loops}") != std::string::npos;
    std::uint64_t invocations = has_loops ? 1 : loop_count;
    for (std::uint64_t i = 0; i < invocations; ++i) {
      auto argv = expand_command(bench.run_cmd,
                                 {{"{exe}", exe.string()},
                                  {"{loops}", std::to_string(loop_count)}});
      auto start = std::chrono::steady_clock::now();
      RunResult result = run_process(argv);
      sample.time_s += std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      if (result.exit_code != bench.expected_exit)
        throw MeasureError("run command for " + bench.name +
                           " exited with code " +
                           std::to_string(result.exit_code));
    }
    return sample;
  }

  std::string_view name() const override { return "timer"; }
};

class CommandProvider final : public MeasurementProvider {
public:
  explicit CommandProvider(std::string command)
      : command_(std::move(command)) {}

  Sample run(const fs::path &exe, const BenchmarkSpec &,
             std::uint64_t loop_count) override {
    auto argv = expand_command(command_,
                               {{"{exe}", exe.string()},
                                {"{loops}", std::to_string(loop_count)}});
    RunResult result = run_process(argv);
    if (result.exit_code != 0)
      throw MeasureError("measurement command exited with code " +
                         std::to_string(result.exit_code) + ": " +
                         result.error_output);
    return parse_sample(result.output);
  }

  std::string_view name() const override { return "command"; }

  static Sample parse_sample(const std::string &output) {
    std::size_t open = output.find('{');
    std::size_t close = output.rfind('}');
    if (open == std::string::npos || close == std::string::npos ||
        close < open)
      throw MeasureError("measurement command printed no JSON object");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(output.substr(open, close - open + 1));
    } catch (const nlohmann::json::exception &e) {
      throw MeasureError(std::string("bad measurement JSON: ") + e.what());
    }
    if (!doc.contains("time_s") || !doc["time_s"].is_number())
      throw MeasureError("measurement JSON is missing numeric time_s");
    Sample sample;
    sample.time_s = doc["time_s"].get<double>();
    if (doc.contains("energy_j") && doc["energy_j"].is_number())
      sample.energy_j = doc["energy_j"].get<double>();
    if (doc.contains("power_w") && doc["power_w"].is_number())
      sample.power_w = doc["power_w"].get<double>();
    return sample;
  }

private:
  std::string command_;
};

class SyntheticProvider final : public MeasurementProvider {
public:
  Sample run(const fs::path &exe, const BenchmarkSpec &,
             std::uint64_t loop_count) override {
    std::ifstream in(exe);
    if (!in)
      throw MeasureError("cannot read mock binary: " + exe.string());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());

    std::optional<double> time_s;
    std::optional<double> energy_j;
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) {
      std::size_t eq = token.find('=');
      if (eq == std::string::npos)
        continue;
      std::string key = token.substr(0, eq);
      std::string value = token.substr(eq + 1);
      try {
        if (key == "time_s")
          time_s = std::stod(value);
        else if (key == "energy_j")
          energy_j = std::stod(value);
      } catch (const std::exception &) {
        throw MeasureError("corrupt mock binary field \"" + token + "\" in " +
                           exe.string());
      }
    }
    if (!time_s || *time_s <= 0.0)
      throw MeasureError("corrupt mock binary (no positive time_s): " +
                         exe.string());

    Sample sample;
    sample.time_s = *time_s * static_cast<double>(loop_count);
    if (energy_j)
      sample.energy_j = *energy_j * static_cast<double>(loop_count);
    return sample;
  }

  std::string_view name() const override { return "synthetic"; }
};

} // namespace

std::unique_ptr<MeasurementProvider> make_timer_provider() {
  return std::make_unique<TimerProvider>();
}

std::unique_ptr<MeasurementProvider>
make_command_provider(std::string command) {
  if (command.empty())
    throw ConfigError("command provider requires a command template");
  return std::make_unique<CommandProvider>(std::move(command));
}

std::unique_ptr<MeasurementProvider> make_synthetic_provider() {
  return std::make_unique<SyntheticProvider>();
}

std::unique_ptr<MeasurementProvider> make_provider(const std::string &kind,
                                                   const std::string &command) {
  if (kind == "timer")
    return make_timer_provider();
  if (kind == "command")
    return make_command_provider(command);
  if (kind == "synthetic")
    return make_synthetic_provider();
  throw ConfigError("unknown measurement provider: " + kind);
}

double median(std::vector<double> values) {
  if (values.empty())
    throw MeasureError("median of an empty sample set");
  std::sort(values.begin(), values.end());
  std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1)
    return values[mid];
  return (values[mid - 1] + values[mid]) / 2.0;
}

std::uint64_t calibrate(const fs::path &exe, const BenchmarkSpec &bench,
                        MeasurementProvider &provider,
                        const MeasurementPlan &plan, std::string *warning) {
  std::scoped_lock lock(measurement_token());
  std::uint64_t loop_count = 1;
  for (;;) {
    MeasurementProvider::Sample sample = provider.run(exe, bench, loop_count);
    if (sample.time_s >= plan.min_run_s)
      return loop_count;
    if (loop_count >= kMaxLoopCount) {
      if (warning)
        *warning = "calibration capped at " + std::to_string(kMaxLoopCount) +
                   " iterations without reaching " +
                   std::to_string(plan.min_run_s) + " s per run";
      return kMaxLoopCount;
    }
    loop_count *= 2;
  }
}

ResourceMeasurement measure(const fs::path &exe, const BenchmarkSpec &bench,
                            MeasurementProvider &provider,
                            const MeasurementPlan &plan,
                            std::uint64_t loop_count,
                            const std::optional<std::string> &size_cmd) {
  if (plan.repeats < 1)
    throw MeasureError("measurement plan needs at least one repeat");

  std::scoped_lock lock(measurement_token());

  for (int i = 0; i < plan.warmups; ++i)
    provider.run(exe, bench, loop_count);

  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> powers;
  times.reserve(static_cast<std::size_t>(plan.repeats));
  for (int i = 0; i < plan.repeats; ++i) {
    MeasurementProvider::Sample sample = provider.run(exe, bench, loop_count);
    times.push_back(sample.time_s);
    if (sample.energy_j)
      energies.push_back(*sample.energy_j);
    if (sample.power_w)
      powers.push_back(*sample.power_w);
  }

  ResourceMeasurement m;
  m.repeats = plan.repeats;
  m.loop_count = loop_count;
  m.exec_time_s = median(times) / static_cast<double>(loop_count);
  if (energies.size() == times.size())
    m.energy_j = median(energies) / static_cast<double>(loop_count);
  if (powers.size() == times.size())
    m.avg_power_w = median(powers);
  else if (m.energy_j && m.exec_time_s > 0.0)
    m.avg_power_w = *m.energy_j / m.exec_time_s;
  m.code_size_b = code_size(exe, size_cmd);
  return m;
}

std::uint64_t code_size(const fs::path &exe,
                        const std::optional<std::string> &size_cmd) {
  if (!size_cmd) {
    std::error_code ec;
    std::uintmax_t size = fs::file_size(exe, ec);
    if (ec)
      throw MeasureError("cannot stat executable " + exe.string() + ": " +
                         ec.message());
    return static_cast<std::uint64_t>(size);
  }

  auto argv = expand_command(*size_cmd, {{"{exe}", exe.string()}});
  RunResult result = run_process(argv);
  if (result.exit_code != 0)
    throw MeasureError("size command exited with code " +
                       std::to_string(result.exit_code));

  // Whitespace-separated key=value integers; the result is their sum.
  std::uint64_t total = 0;
  bool any = false;
  std::istringstream tokens(result.output);
  std::string token;
  while (tokens >> token) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos)
      throw MeasureError("size command printed a non key=value token: \"" +
                         token + "\"");
    try {
      total += std::stoull(token.substr(eq + 1));
    } catch (const std::exception &) {
      throw MeasureError("size command printed a non-integer value: \"" +
                         token + "\"");
    }
    any = true;
  }
  if (!any)
    throw MeasureError("size command printed no key=value sizes");
  return total;
}

} // namespace optprefix
