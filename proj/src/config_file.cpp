//===-- config_file.cpp ---------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "config_file.hpp"

#include "errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace optprefix {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string &message) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + message);
}

int parse_int(const std::string &value, std::size_t line_no) {
  try {
    std::size_t used = 0;
    int parsed = std::stoi(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception &) {
    fail(line_no, "expected an integer, got \"" + value + "\"");
  }
}

double parse_number(const std::string &value, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double parsed = std::stod(value, &used);
    if (used != value.size())
      throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception &) {
    fail(line_no, "expected a number, got \"" + value + "\"");
  }
}

fs::path resolve(const fs::path &base_dir, const std::string &value) {
  fs::path p(value);
  return p.is_absolute() ? p : base_dir / p;
}

} // namespace

ExplorationConfig ExplorationConfig::load(const fs::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  fs::path base = file.has_parent_path() ? file.parent_path() : fs::path(".");
  return parse(buf.str(), base);
}

ExplorationConfig ExplorationConfig::parse(std::string_view text,
                                           const fs::path &base_dir) {
  ExplorationConfig config;
  config.toolchain.work_dir = base_dir / "work";

  enum class Section { Top, Toolchain, Plan, Provider, Benchmark };
  Section section = Section::Top;
  BenchmarkSpec *bench = nullptr;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        fail(line_no, "unterminated section header");
      std::string_view name = line.substr(1, line.size() - 2);
      if (name == "toolchain")
        section = Section::Toolchain;
      else if (name == "plan")
        section = Section::Plan;
      else if (name == "provider")
        section = Section::Provider;
      else if (name == "benchmark") {
        section = Section::Benchmark;
        config.benchmarks.emplace_back();
        bench = &config.benchmarks.back();
      } else
        fail(line_no, "unknown section [" + std::string(name) + "]");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(line_no, "expected key = value");
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty())
      fail(line_no, "empty key");

    switch (section) {
    case Section::Top:
      if (key == "pipeline")
        config.pipeline_file = resolve(base_dir, value);
      else if (key == "pipeline_label")
        config.pipeline_label = value;
      else if (key == "out_dir")
        config.out_dir = resolve(base_dir, value);
      else if (key == "epsilon_pct")
        config.epsilon_pct = parse_number(value, line_no);
      else if (key == "jobs")
        config.jobs = parse_int(value, line_no);
      else if (key == "criteria")
        config.criteria = parse_criteria(value);
      else if (key == "validate_timeout_s")
        config.validate_timeout_s = parse_number(value, line_no);
      else
        fail(line_no, "unknown top-level key \"" + key + "\"");
      break;

    case Section::Toolchain:
      if (key == "frontend")
        config.toolchain.frontend_cmd = value;
      else if (key == "optimizer")
        config.toolchain.optimizer_cmd = value;
      else if (key == "backend")
        config.toolchain.backend_cmd = value;
      else if (key == "link")
        config.toolchain.link_cmd = value;
      else if (key == "level")
        config.toolchain.level = value;
      else if (key == "flag_prefix")
        config.toolchain.flag_prefix = value;
      else if (key == "work_dir")
        config.toolchain.work_dir = resolve(base_dir, value);
      else if (key == "size_cmd")
        config.toolchain.size_cmd = value;
      else if (key == "extra")
        config.toolchain.extra = value;
      else
        fail(line_no, "unknown [toolchain] key \"" + key + "\"");
      break;

    case Section::Plan:
      if (key == "repeats")
        config.plan.repeats = parse_int(value, line_no);
      else if (key == "min_run_s")
        config.plan.min_run_s = parse_number(value, line_no);
      else if (key == "warmups")
        config.plan.warmups = parse_int(value, line_no);
      else
        fail(line_no, "unknown [plan] key \"" + key + "\"");
      break;

    case Section::Provider:
      if (key == "kind")
        config.provider.kind = value;
      else if (key == "command")
        config.provider.command = value;
      else
        fail(line_no, "unknown [provider] key \"" + key + "\"");
      break;

    case Section::Benchmark:
      if (key == "name")
        bench->name = value;
      else if (key == "source")
        bench->sources.push_back(resolve(base_dir, value));
      else if (key == "run")
        bench->run_cmd = value;
      else if (key == "validate")
        bench->validate_cmd = value;
      else if (key == "expected_exit")
        bench->expected_exit = parse_int(value, line_no);
      else
        fail(line_no, "unknown [benchmark] key \"" + key + "\"");
      break;
    }
  }
  return config;
}

void ExplorationConfig::validate() const {
  if (pipeline_file.empty())
    throw ConfigError("config does not name a pipeline file");
  if (!fs::exists(pipeline_file))
    throw ConfigError("pipeline file does not exist: " +
                      pipeline_file.string());
  toolchain.validate();
  if (jobs < 1)
    throw ConfigError("jobs must be at least 1");
  if (plan.repeats < 1)
    throw ConfigError("plan repeats must be at least 1");
  if (plan.warmups < 0)
    throw ConfigError("plan warmups must not be negative");
  if (!(plan.min_run_s > 0.0))
    throw ConfigError("plan min_run_s must be positive");
  if (epsilon_pct < 0.0)
    throw ConfigError("epsilon_pct must not be negative");
  if (benchmarks.empty())
    throw ConfigError("config defines no benchmarks");

  std::set<std::string> names;
  for (const BenchmarkSpec &bench : benchmarks) {
    if (bench.name.empty())
      throw ConfigError("a [benchmark] section is missing a name");
    if (!names.insert(bench.name).second)
      throw ConfigError("duplicate benchmark name \"" + bench.name + "\"");
    if (bench.sources.empty())
      throw ConfigError("benchmark " + bench.name + " lists no sources");
    for (const fs::path &source : bench.sources)
      if (!fs::exists(source))
        throw ConfigError("benchmark " + bench.name +
                          ": source does not exist: " + source.string());
    if (bench.run_cmd.empty())
      throw ConfigError("benchmark " + bench.name + " has no run command");
  }

  if (provider.kind != "timer" && provider.kind != "command" &&
      provider.kind != "synthetic")
    throw ConfigError("unknown provider kind \"" + provider.kind + "\"");
  if (provider.kind == "command" && provider.command.empty())
    throw ConfigError("provider kind \"command\" requires a command");
}

} // namespace optprefix
