//===-- toolchain.cpp -----------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "toolchain.hpp"

#include "errors.hpp"
#include "process.hpp"

#include <fstream>
#include <sstream>

namespace optprefix {

namespace fs = std::filesystem;

std::string_view to_string(BuildStatus status) {
  switch (status) {
  case BuildStatus::Built:
    return "built";
  case BuildStatus::CompileFailed:
    return "compile-failed";
  case BuildStatus::ValidationFailed:
    return "validation-failed";
  case BuildStatus::Unmeasured:
    return "unmeasured";
  }
  return "unknown";
}

std::optional<BuildStatus> build_status_from_string(std::string_view text) {
  if (text == "built")
    return BuildStatus::Built;
  if (text == "compile-failed")
    return BuildStatus::CompileFailed;
  if (text == "validation-failed")
    return BuildStatus::ValidationFailed;
  if (text == "unmeasured")
    return BuildStatus::Unmeasured;
  return std::nullopt;
}

void ToolchainSpec::validate() const {
  auto require = [](std::string_view templ, std::string_view placeholder,
                    std::string_view which) {
    if (templ.find(placeholder) == std::string_view::npos)
      throw ConfigError(std::string(which) + " template is missing " +
                        std::string(placeholder));
  };
  for (const auto &[templ, which] :
       {std::pair<std::string_view, std::string_view>{frontend_cmd,
                                                      "frontend"},
        {optimizer_cmd, "optimizer"},
        {backend_cmd, "backend"},
        {link_cmd, "link"}}) {
    if (templ.empty())
      throw ConfigError(std::string(which) + " command template is empty");
    require(templ, "{input}", which);
    require(templ, "{output}", which);
  }
  if (optimizer_cmd.find("{passes}") == std::string::npos &&
      optimizer_cmd.find("{passes+}") == std::string::npos)
    throw ConfigError("optimizer template is missing {passes}");
  require(backend_cmd, "{level}", "backend");
  require(link_cmd, "{level}", "link");
  if (work_dir.empty())
    throw ConfigError("toolchain work_dir is not set");
}

namespace {

std::string replace_all(std::string text, std::string_view key,
                        std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string join(const std::vector<std::string> &parts,
                 std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += separator;
    out += parts[i];
  }
  return out;
}

} // namespace

std::vector<std::string>
expand_command(std::string_view templ,
               const std::map<std::string, std::string> &subst,
               const std::map<std::string, std::vector<std::string>> &splice) {
  std::vector<std::string> argv;
  for (std::string &token : split_command(templ)) {
    auto spliced = splice.find(token);
    if (spliced != splice.end()) {
      argv.insert(argv.end(), spliced->second.begin(), spliced->second.end());
      continue;
    }
    // Embedded list placeholders join with commas, e.g. -passes={passes}.
    for (const auto &[key, values] : splice)
      token = replace_all(std::move(token), key, join(values, ","));
    for (const auto &[key, value] : subst)
      token = replace_all(std::move(token), key, value);
    argv.push_back(std::move(token));
  }
  return argv;
}

std::vector<std::string> render_pass_flags(const OptConfig &config,
                                           const std::string &flag_prefix) {
  std::vector<std::string> flags;
  flags.reserve(config.flags.size());
  for (const std::string &name : config.flags)
    flags.push_back(flag_prefix + name);
  return flags;
}

bool passes_required_nonempty(std::string_view templ) {
  return templ.find("{passes+}") != std::string_view::npos;
}

std::uint64_t hash_sources(const std::vector<fs::path> &sources) {
  // FNV-1a over each source's name and bytes, in order.
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](const char *data, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 0x100000001b3ull;
    }
  };
  for (const fs::path &source : sources) {
    std::string name = source.filename().string();
    mix(name.data(), name.size());
    mix("\0", 1);
    std::ifstream in(source, std::ios::binary);
    if (!in)
      throw ToolchainError("cannot read source file: " + source.string());
    char buf[8192];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
      mix(buf, static_cast<std::size_t>(in.gcount()));
    mix("\0", 1);
  }
  return hash;
}

namespace {

std::string quote_arg(const std::string &arg) {
  if (arg.empty() || arg.find_first_of(" \t\"'") != std::string::npos)
    return "\"" + replace_all(arg, "\"", "\\\"") + "\"";
  return arg;
}

std::string command_line(const std::vector<std::string> &argv) {
  std::string line;
  for (const std::string &arg : argv) {
    if (!line.empty())
      line += ' ';
    line += quote_arg(arg);
  }
  return line;
}

void append_log(std::string *log, const std::string &text) {
  if (log)
    *log += text;
}

// Runs one toolchain step, appending a transcript; throws on nonzero exit.
RunResult run_step(std::string_view step, const std::vector<std::string> &argv,
                   std::string *log,
                   std::optional<double> timeout_s = std::nullopt) {
  std::string line = command_line(argv);
  RunResult result = run_process(argv, timeout_s);
  std::ostringstream entry;
  entry << "$ " << line << "\n[" << step << " exit " << result.exit_code;
  if (result.timed_out)
    entry << ", timed out";
  entry << "]\n";
  if (!result.output.empty())
    entry << result.output << (result.output.back() == '\n' ? "" : "\n");
  if (!result.error_output.empty())
    entry << result.error_output
          << (result.error_output.back() == '\n' ? "" : "\n");
  append_log(log, entry.str());
  return result;
}

RunResult run_step_checked(std::string_view step,
                           const std::vector<std::string> &argv,
                           std::string *log) {
  RunResult result = run_step(step, argv, log);
  if (!result.ok()) {
    std::string message = std::string(step) + " failed (exit " +
                          std::to_string(result.exit_code) + "): " +
                          command_line(argv);
    throw ToolchainError(message, log ? *log : std::string());
  }
  return result;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

} // namespace

ToolchainDriver::ToolchainDriver(ToolchainSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
}

fs::path ToolchainDriver::bench_dir(const std::string &bench_name) const {
  return spec_.work_dir / bench_name;
}

fs::path ToolchainDriver::config_dir(const std::string &bench_name,
                                     std::size_t config_index) const {
  return bench_dir(bench_name) / std::to_string(config_index);
}

fs::path ToolchainDriver::emit_unoptimized_ir(const BenchmarkSpec &bench,
                                              std::string *log) {
  if (bench.sources.empty())
    throw ToolchainError("benchmark " + bench.name + " lists no sources");
  for (const fs::path &source : bench.sources)
    if (!fs::exists(source))
      throw ToolchainError("source file does not exist: " + source.string());

  fs::create_directories(bench_dir(bench.name));
  std::uint64_t key = hash_sources(bench.sources);
  fs::path ir = bench_dir(bench.name) / ("unopt-" + hex64(key) + ".ir");
  if (fs::exists(ir)) {
    append_log(log, "frontend: reusing cached IR " + ir.string() + "\n");
    return ir;
  }

  std::vector<std::string> inputs;
  for (const fs::path &source : bench.sources)
    inputs.push_back(source.string());
  auto argv = expand_command(spec_.frontend_cmd,
                             {{"{output}", ir.string()},
                              {"{level}", spec_.level},
                              {"{extra}", spec_.extra}},
                             {{"{input}", inputs}});
  try {
    run_step_checked("frontend", argv, log);
  } catch (const ToolchainError &) {
    std::error_code ec;
    fs::remove(ir, ec); // drop any partial output
    throw;
  }
  if (!fs::exists(ir))
    throw ToolchainError("frontend produced no output at " + ir.string(),
                         log ? *log : std::string());
  return ir;
}

fs::path ToolchainDriver::optimize(const fs::path &ir_path,
                                   const OptConfig &config,
                                   const std::string &bench_name,
                                   std::string *log) {
  if (!fs::exists(ir_path))
    throw ToolchainError("unoptimized IR does not exist: " + ir_path.string());

  fs::path dir = config_dir(bench_name, config.index);
  fs::create_directories(dir);
  fs::path out = dir / "opt.ir";

  if (config.flags.empty() && passes_required_nonempty(spec_.optimizer_cmd)) {
    fs::copy_file(ir_path, out, fs::copy_options::overwrite_existing);
    append_log(log, "optimizer: skipped (empty pass list), copied IR\n");
    return out;
  }

  std::string templ = replace_all(spec_.optimizer_cmd, "{passes+}", "{passes}");
  auto argv = expand_command(
      templ,
      {{"{input}", ir_path.string()},
       {"{output}", out.string()},
       {"{level}", spec_.level},
       {"{extra}", spec_.extra}},
      {{"{passes}", render_pass_flags(config, spec_.flag_prefix)}});
  run_step_checked("optimizer", argv, log);
  if (!fs::exists(out))
    throw ToolchainError("optimizer produced no output at " + out.string(),
                         log ? *log : std::string());
  return out;
}

fs::path ToolchainDriver::build_executable(const fs::path &opt_ir,
                                           const std::string &bench_name,
                                           std::size_t config_index,
                                           std::string *log) {
  if (!fs::exists(opt_ir))
    throw ToolchainError("optimized IR does not exist: " + opt_ir.string());

  fs::path dir = config_dir(bench_name, config_index);
  fs::create_directories(dir);
  fs::path object = dir / "backend.out";
  fs::path exe = dir / "app";

  // Backend and linker always run at the fixed exploration level,
  // independent of the configuration under test.
  auto backend_argv = expand_command(spec_.backend_cmd,
                                     {{"{input}", opt_ir.string()},
                                      {"{output}", object.string()},
                                      {"{level}", spec_.level},
                                      {"{extra}", spec_.extra}});
  run_step_checked("backend", backend_argv, log);

  auto link_argv = expand_command(spec_.link_cmd,
                                  {{"{input}", object.string()},
                                   {"{output}", exe.string()},
                                   {"{level}", spec_.level},
                                   {"{extra}", spec_.extra}});
  run_step_checked("link", link_argv, log);
  if (!fs::exists(exe))
    throw ToolchainError("linker produced no output at " + exe.string(),
                         log ? *log : std::string());
  return exe;
}

BuildStatus ToolchainDriver::validate(const fs::path &exe,
                                      const BenchmarkSpec &bench,
                                      double timeout_s, std::string *reason,
                                      std::string *log) {
  if (!fs::exists(exe))
    throw ToolchainError("executable does not exist: " + exe.string());

  std::vector<std::string> argv;
  int expected = 0;
  if (bench.validate_cmd) {
    argv = expand_command(*bench.validate_cmd, {{"{exe}", exe.string()}});
  } else {
    argv = expand_command(bench.run_cmd,
                          {{"{exe}", exe.string()}, {"{loops}", "1"}});
    expected = bench.expected_exit;
  }

  RunResult result = run_step("validate", argv, log, timeout_s);
  if (result.timed_out) {
    if (reason)
      *reason = "timeout";
    return BuildStatus::ValidationFailed;
  }
  if (result.exit_code != expected) {
    if (reason)
      *reason = "exit code " + std::to_string(result.exit_code) +
                " (expected " + std::to_string(expected) + ")";
    return BuildStatus::ValidationFailed;
  }
  return BuildStatus::Built;
}

} // namespace optprefix
