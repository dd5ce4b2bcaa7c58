//===-- process.hpp ---------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_PROCESS_HPP
#define OPTPREFIX_PROCESS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace optprefix {

struct RunResult {
  int exit_code = -1;   // 128 + signal when terminated by a signal
  bool timed_out = false;
  std::string output;       // captured stdout
  std::string error_output; // captured stderr
  double wall_s = 0.0;

  bool ok() const { return exit_code == 0 && !timed_out; }
};

/// Splits a command line on whitespace outside quotes. Single and double
/// quotes group; backslash escapes the next character outside single
/// quotes. Throws ParseError on an unterminated quote.
std::vector<std::string> split_command(std::string_view text);

/// Launches argv directly (no shell), capturing stdout and stderr. When
/// timeout_s elapses the process group is killed and timed_out is set.
RunResult run_process(const std::vector<std::string> &argv,
                      std::optional<double> timeout_s = std::nullopt);

} // namespace optprefix

#endif // OPTPREFIX_PROCESS_HPP
