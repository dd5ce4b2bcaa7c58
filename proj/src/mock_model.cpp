//===-- mock_model.cpp ----------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "mock_model.hpp"

#include "errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

namespace optprefix {

namespace fs = std::filesystem;

ResourceTriple CostModel::resources_for_flag_count(const std::string &bench,
                                                   std::size_t flag_count) const {
  auto base_it = base.find(bench);
  if (base_it == base.end())
    throw ModelError("cost model does not cover benchmark \"" + bench + "\"");

  ResourceTriple r = base_it->second;
  auto factors_it = factors.find(bench);
  if (factors_it == factors.end())
    return r;
  for (const auto &[position, factor] : factors_it->second) {
    if (position >= flag_count)
      break; // map iteration is position-ordered
    r.time_s *= factor.time;
    r.energy_j *= factor.energy;
    r.size_b *= factor.size;
  }
  return r;
}

ResourceTriple CostModel::resources(const std::string &bench,
                                    const OptConfig &config) const {
  return resources_for_flag_count(bench, config.total_flags());
}

void CostModel::mark_invalid(const std::string &bench,
                             const OptConfig &config) {
  invalid.insert({bench, config.total_flags()});
}

bool CostModel::is_invalid(const std::string &bench,
                           std::size_t flag_count) const {
  return invalid.count({bench, flag_count}) > 0;
}

namespace {

// mt19937_64 output is fully specified, so models are reproducible across
// platforms; the standard distributions are not, hence the manual mapping.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 engine_;
};

} // namespace

CostModel CostModel::generate(std::uint64_t seed, const PassPipeline &pipeline,
                              const std::vector<std::string> &benchmarks) {
  CostModel model;
  model.seed = seed;
  Rng rng(seed);

  for (const std::string &bench : benchmarks) {
    ResourceTriple b;
    b.time_s = rng.uniform(0.5, 2.0);
    b.energy_j = b.time_s * rng.uniform(0.8, 1.2);
    b.size_b = rng.uniform(20000.0, 80000.0);
    model.base[bench] = b;

    for (const PassEntry &entry : pipeline.entries()) {
      if (entry.kind != PassKind::Transformation)
        continue; // analyses never change the produced code
      FactorTriple f;
      if (rng.uniform() < 0.7)
        f.time = rng.uniform(0.90, 1.00); // the pass helps
      else
        f.time = rng.uniform(1.00, 1.08); // the pass hurts
      f.energy = f.time * (1.0 + rng.uniform(-0.01, 0.01));
      f.size = rng.uniform(0.995, 1.005);
      model.factors[bench][entry.position] = f;
    }
  }

  // Guarantee at least one benchmark where stopping early wins: the final
  // transformation must hurt somewhere.
  std::size_t last_transformation = 0;
  bool has_transformation = false;
  for (const PassEntry &entry : pipeline.entries())
    if (entry.kind == PassKind::Transformation) {
      last_transformation = entry.position;
      has_transformation = true;
    }
  if (has_transformation && !benchmarks.empty()) {
    bool covered = false;
    for (const std::string &bench : benchmarks) {
      auto it = model.factors[bench].find(last_transformation);
      if (it != model.factors[bench].end() && it->second.time > 1.0)
        covered = true;
    }
    if (!covered) {
      FactorTriple &f = model.factors[benchmarks.front()][last_transformation];
      f.time = 1.15;
      f.energy = 1.15;
    }
  }
  return model;
}

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string &text, const std::string &context) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size())
      throw std::invalid_argument(text);
    return value;
  } catch (const std::exception &) {
    throw ModelError("bad number \"" + text + "\" in " + context);
  }
}

} // namespace

void CostModel::save(const fs::path &file) const {
  std::ofstream out(file);
  if (!out)
    throw ModelError("cannot write cost model to " + file.string());
  out << "# optprefix mock cost model\n";
  out << "seed " << seed << "\n";
  for (const auto &[bench, b] : base)
    out << "bench " << bench << " " << format_double(b.time_s) << " "
        << format_double(b.energy_j) << " " << format_double(b.size_b) << "\n";
  for (const auto &[bench, positions] : factors)
    for (const auto &[position, f] : positions)
      out << "factor " << bench << " " << position << " "
          << format_double(f.time) << " " << format_double(f.energy) << " "
          << format_double(f.size) << "\n";
  for (const auto &[bench, flag_count] : invalid)
    out << "invalid " << bench << " " << flag_count << "\n";
  if (!out)
    throw ModelError("failed writing cost model to " + file.string());
}

CostModel CostModel::load(const fs::path &file) {
  std::ifstream in(file);
  if (!in)
    throw ModelError("cannot open cost model file " + file.string());

  CostModel model;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    std::istringstream tokens(line);
    std::string kind;
    tokens >> kind;
    std::string context =
        file.string() + " line " + std::to_string(line_no);
    if (kind == "seed") {
      tokens >> model.seed;
    } else if (kind == "bench") {
      std::string name, time, energy, size;
      tokens >> name >> time >> energy >> size;
      if (name.empty() || size.empty())
        throw ModelError("truncated bench record in " + context);
      ResourceTriple b;
      b.time_s = parse_double(time, context);
      b.energy_j = parse_double(energy, context);
      b.size_b = parse_double(size, context);
      model.base[name] = b;
    } else if (kind == "factor") {
      std::string name, pos, time, energy, size;
      tokens >> name >> pos >> time >> energy >> size;
      if (name.empty() || size.empty())
        throw ModelError("truncated factor record in " + context);
      FactorTriple f;
      f.time = parse_double(time, context);
      f.energy = parse_double(energy, context);
      f.size = parse_double(size, context);
      model.factors[name][static_cast<std::size_t>(
          parse_double(pos, context))] = f;
    } else if (kind == "invalid") {
      std::string name, count;
      tokens >> name >> count;
      if (name.empty() || count.empty())
        throw ModelError("truncated invalid record in " + context);
      model.invalid.insert(
          {name, static_cast<std::size_t>(parse_double(count, context))});
    } else {
      throw ModelError("unknown record \"" + kind + "\" in " + context);
    }
  }
  return model;
}

namespace {

std::string quoted(const fs::path &path) {
  return "\"" + path.string() + "\"";
}

} // namespace

MockToolchain make_mock_toolchain(const fs::path &mockc_binary,
                                  const fs::path &model_file,
                                  const fs::path &work_dir) {
  MockToolchain mock;
  std::string mockc = quoted(mockc_binary);
  std::string model = quoted(model_file);
  mock.toolchain.frontend_cmd =
      mockc + " frontend --model " + model + " -o {output} {input}";
  mock.toolchain.optimizer_cmd =
      mockc + " opt -o {output} -i {input} {passes}";
  mock.toolchain.backend_cmd =
      mockc + " backend {level} -o {output} -i {input}";
  mock.toolchain.link_cmd =
      mockc + " link --model " + model + " {level} -o {output} -i {input}";
  mock.toolchain.size_cmd = mockc + " size {exe}";
  mock.toolchain.level = "-O2";
  mock.toolchain.flag_prefix = "-";
  mock.toolchain.work_dir = work_dir;
  mock.provider_kind = "synthetic";
  return mock;
}

std::string mock_run_command(const fs::path &mockc_binary) {
  return quoted(mockc_binary) + " run {exe}";
}

fs::path find_mockc_binary() {
  if (const char *env = std::getenv("OPTPREFIX_MOCKC")) {
    fs::path candidate(env);
    if (fs::exists(candidate))
      return candidate;
    throw ConfigError("OPTPREFIX_MOCKC points to a missing file: " +
                      std::string(env));
  }

  std::error_code ec;
  fs::path self = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    fs::path candidate = self.parent_path() / "optprefix-mockc";
    if (fs::exists(candidate))
      return candidate;
  }

  if (const char *path_env = std::getenv("PATH")) {
    std::istringstream dirs(path_env);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (dir.empty())
        continue;
      fs::path candidate = fs::path(dir) / "optprefix-mockc";
      if (fs::exists(candidate))
        return candidate;
    }
  }
  throw ConfigError("cannot locate the optprefix-mockc binary (set "
                    "OPTPREFIX_MOCKC or install it next to the tool)");
}

} // namespace optprefix
