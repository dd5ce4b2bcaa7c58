//===-- mockc_main.cpp ----------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The mock toolchain: a single binary acting as frontend, optimizer,
// backend, linker, runner and size tool for mock benchmarks, driven by a
// cost model file. Build results are plain text:
//
//   mock IR:      "bench=<name>" plus one "passes=<names...>" line after
//                 the optimizer and a "backend=<level>" line after the
//                 backend
//   mock binary:  "time_s=<float> energy_j=<float> size_b=<int>", with
//                 " selftest=fail" appended for configurations the model
//                 marks invalid
//
// Subcommands:
//   frontend --model M -o OUT IN...     check coverage, emit base IR
//   opt -o OUT -i IN [-flag...]         record the ordered pass list
//   backend LEVEL -o OUT -i IN          pass-through, records the level
//   link --model M LEVEL -o OUT -i IN   evaluate the model, emit the binary
//   run EXE                             exit 0 unless the self-test fails
//   size EXE                            print "text=<size_b>"
//
//===----------------------------------------------------------------------===//

#include "errors.hpp"
#include "mock_model.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace optprefix;

namespace {

int usage(const char *message = nullptr) {
  if (message)
    std::cerr << "mockc: " << message << "\n";
  std::cerr << "usage: optprefix-mockc "
               "{frontend|opt|backend|link|run|size} ...\n";
  return 2;
}

struct Args {
  std::string model_file;
  std::string output;
  std::string input;
  std::vector<std::string> rest; // positional / pass flags
};

Args parse_args(int argc, char **argv, int first) {
  Args args;
  for (int i = first; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--model" && i + 1 < argc)
      args.model_file = argv[++i];
    else if (arg == "-o" && i + 1 < argc)
      args.output = argv[++i];
    else if (arg == "-i" && i + 1 < argc)
      args.input = argv[++i];
    else
      args.rest.push_back(std::move(arg));
  }
  return args;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ModelError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ModelError("cannot write " + path);
  out << content;
}

// Extracts "key=..." from a mock IR / binary document, one entry per line.
std::string field(const std::string &text, const std::string &key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + "=", 0) == 0)
      return line.substr(key.size() + 1);
  return {};
}

int cmd_frontend(const Args &args) {
  if (args.model_file.empty() || args.output.empty() || args.rest.empty())
    return usage("frontend needs --model, -o and at least one source");
  CostModel model = CostModel::load(args.model_file);

  std::string bench;
  for (const std::string &source : args.rest) {
    std::string name = field(read_file(source), "bench");
    if (name.empty()) {
      std::cerr << "mockc: " << source << " is not a mock source\n";
      return 1;
    }
    if (bench.empty())
      bench = name;
    else if (bench != name) {
      std::cerr << "mockc: sources disagree on the benchmark name\n";
      return 1;
    }
  }
  if (!model.covers(bench)) {
    std::cerr << "mockc: model does not cover benchmark " << bench << "\n";
    return 1;
  }
  write_file(args.output, "bench=" + bench + "\n");
  return 0;
}

int cmd_opt(const Args &args) {
  if (args.output.empty() || args.input.empty())
    return usage("opt needs -o and -i");
  std::string ir = read_file(args.input);
  if (field(ir, "bench").empty()) {
    std::cerr << "mockc: input is not mock IR\n";
    return 1;
  }

  std::string passes;
  for (const std::string &flag : args.rest) {
    std::string name = flag;
    if (!name.empty() && name.front() == '-')
      name.erase(0, 1);
    if (name.empty()) {
      std::cerr << "mockc: empty pass flag\n";
      return 1;
    }
    if (!passes.empty())
      passes += ' ';
    passes += name;
  }
  write_file(args.output, ir + "passes=" + passes + "\n");
  return 0;
}

int cmd_backend(const Args &args) {
  if (args.output.empty() || args.input.empty())
    return usage("backend needs -o and -i");
  std::string level = args.rest.empty() ? std::string() : args.rest.front();
  std::string ir = read_file(args.input);
  if (field(ir, "bench").empty()) {
    std::cerr << "mockc: input is not mock IR\n";
    return 1;
  }
  write_file(args.output, ir + "backend=" + level + "\n");
  return 0;
}

int cmd_link(const Args &args) {
  if (args.model_file.empty() || args.output.empty() || args.input.empty())
    return usage("link needs --model, -o and -i");
  CostModel model = CostModel::load(args.model_file);

  std::string object = read_file(args.input);
  std::string bench = field(object, "bench");
  if (bench.empty()) {
    std::cerr << "mockc: input is not a mock object\n";
    return 1;
  }
  std::size_t flag_count = 0;
  {
    std::istringstream passes(field(object, "passes"));
    std::string name;
    while (passes >> name)
      ++flag_count;
  }

  ResourceTriple r = model.resources_for_flag_count(bench, flag_count);
  char line[160];
  std::snprintf(line, sizeof(line), "time_s=%.17g energy_j=%.17g size_b=%lld",
                r.time_s, r.energy_j,
                static_cast<long long>(std::llround(r.size_b)));
  std::string binary = line;
  if (model.is_invalid(bench, flag_count))
    binary += " selftest=fail";
  binary += "\n";
  write_file(args.output, binary);
  return 0;
}

int cmd_run(const Args &args) {
  if (args.rest.empty())
    return usage("run needs an executable path");
  std::string binary = read_file(args.rest.front());
  if (binary.find("time_s=") == std::string::npos) {
    std::cerr << "mockc: not a mock binary\n";
    return 1;
  }
  if (binary.find("selftest=fail") != std::string::npos) {
    std::cerr << "mockc: self-test failed\n";
    return 1;
  }
  return 0;
}

int cmd_size(const Args &args) {
  if (args.rest.empty())
    return usage("size needs an executable path");
  std::string binary = read_file(args.rest.front());
  std::istringstream tokens(binary);
  std::string token;
  while (tokens >> token)
    if (token.rfind("size_b=", 0) == 0) {
      std::cout << "text=" << token.substr(7) << "\n";
      return 0;
    }
  std::cerr << "mockc: not a mock binary\n";
  return 1;
}

} // namespace

int main(int argc, char **argv) {
  if (argc < 2)
    return usage();
  std::string command = argv[1];
  Args args = parse_args(argc, argv, 2);
  try {
    if (command == "frontend")
      return cmd_frontend(args);
    if (command == "opt")
      return cmd_opt(args);
    if (command == "backend")
      return cmd_backend(args);
    if (command == "link")
      return cmd_link(args);
    if (command == "run")
      return cmd_run(args);
    if (command == "size")
      return cmd_size(args);
  } catch (const std::exception &e) {
    std::cerr << "mockc: " << e.what() << "\n";
    return 1;
  }
  return usage(("unknown subcommand " + command).c_str());
}
