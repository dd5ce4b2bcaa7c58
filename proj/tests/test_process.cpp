//===-- test_process.cpp --------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "process.hpp"

#include "errors.hpp"

#include <doctest.h>

using namespace optprefix;

TEST_SUITE_BEGIN("process");

TEST_CASE("split_command: whitespace outside quotes") {
  CHECK(split_command("a b  c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_command("") == std::vector<std::string>{});
  CHECK(split_command("  \t ") == std::vector<std::string>{});
  CHECK(split_command("one") == std::vector<std::string>{"one"});
}

TEST_CASE("split_command: quotes group and nest") {
  CHECK(split_command("a \"b c\" d") ==
        std::vector<std::string>{"a", "b c", "d"});
  CHECK(split_command("a 'b \"x\" c'") ==
        std::vector<std::string>{"a", "b \"x\" c"});
  CHECK(split_command("pre\"mid dle\"post") ==
        std::vector<std::string>{"premid dlepost"});
  CHECK(split_command("empty '' arg") ==
        std::vector<std::string>{"empty", "", "arg"});
  CHECK(split_command("esc\\ ape") == std::vector<std::string>{"esc ape"});
}

TEST_CASE("split_command: unterminated quote") {
  CHECK_THROWS_AS(split_command("a \"b"), ParseError);
  CHECK_THROWS_AS(split_command("a 'b"), ParseError);
}

TEST_CASE("run_process: captures stdout and stderr separately") {
  RunResult r = run_process({"/bin/sh", "-c", "echo out; echo err 1>&2"});
  CHECK(r.exit_code == 0);
  CHECK(r.output == "out\n");
  CHECK(r.error_output == "err\n");
  CHECK(r.ok());
}

TEST_CASE("run_process: exit codes") {
  CHECK(run_process({"/bin/sh", "-c", "exit 7"}).exit_code == 7);
  CHECK_FALSE(run_process({"/bin/sh", "-c", "exit 1"}).ok());
}

TEST_CASE("run_process: missing program reports exit 127") {
  RunResult r = run_process({"/nonexistent-program-xyz"});
  CHECK(r.exit_code == 127);
}

TEST_CASE("run_process: timeout kills the process group") {
  RunResult r = run_process({"/bin/sh", "-c", "sleep 30"}, 0.2);
  CHECK(r.timed_out);
  CHECK(r.wall_s < 5.0);
}

TEST_CASE("run_process: large output does not deadlock") {
  RunResult r = run_process(
      {"/bin/sh", "-c", "dd if=/dev/zero bs=1024 count=300 2>/dev/null | "
                        "tr '\\0' 'x'"});
  CHECK(r.exit_code == 0);
  CHECK(r.output.size() == 300 * 1024);
}

TEST_SUITE_END();
