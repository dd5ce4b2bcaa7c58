//===-- errors.hpp ----------------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_ERRORS_HPP
#define OPTPREFIX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace optprefix {

/// Malformed input text (pipeline files, reports, templates).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad exploration configuration (missing files, invalid values).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A toolchain step failed; carries the captured command log.
class ToolchainError : public std::runtime_error {
public:
  ToolchainError(const std::string &what, std::string log = {})
      : std::runtime_error(what), log_(std::move(log)) {}
  const std::string &log() const { return log_; }

private:
  std::string log_;
};

/// A measurement run or provider failed.
class MeasureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Profile construction or best-config selection failed.
class SelectionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mock cost model errors (unknown benchmark, corrupt file).
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace optprefix

#endif // OPTPREFIX_ERRORS_HPP
