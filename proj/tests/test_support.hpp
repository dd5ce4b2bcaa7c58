//===-- test_support.hpp ----------------------------------------*- C++ -*-===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#ifndef OPTPREFIX_TEST_SUPPORT_HPP
#define OPTPREFIX_TEST_SUPPORT_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <sys/stat.h>

namespace test_support {

/// Self-deleting scratch directory under the system temp dir.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0;; ++attempt) {
      path_ = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                      std::to_string(counter_++) + "-" +
                      std::to_string(attempt));
      std::error_code ec;
      if (std::filesystem::create_directory(path_, ec))
        break;
    }
  }

  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const {
    return path_ / name;
  }

private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path &path,
                       const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

/// Writes an executable shell script (test toolchains are sh scripts).
inline std::filesystem::path write_script(const std::filesystem::path &path,
                                          const std::string &body) {
  write_file(path, "#!/bin/sh\n" + body);
  ::chmod(path.c_str(), 0755);
  return path;
}

/// Deterministic generator for property-style tests.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(engine_() % bound);
  }
  double uniform(double lo, double hi) {
    double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

private:
  std::mt19937_64 engine_;
};

} // namespace test_support

#endif // OPTPREFIX_TEST_SUPPORT_HPP
