//===-- explore.cpp -------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "explore.hpp"

#include "errors.hpp"
#include "mock_model.hpp"
#include "process.hpp"
#include "version.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace optprefix {

namespace fs = std::filesystem;

namespace {

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

void write_text(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::optional<std::string> read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct BuildRecord {
  BuildStatus status = BuildStatus::CompileFailed;
  std::string reason;
};

void save_build_record(const fs::path &dir, const BuildRecord &record) {
  std::string text = "status=" + std::string(to_string(record.status)) + "\n";
  if (!record.reason.empty())
    text += "reason=" + one_line(record.reason) + "\n";
  write_text(dir / "status.txt", text);
}

std::optional<BuildRecord> load_build_record(const fs::path &dir) {
  auto text = read_text(dir / "status.txt");
  if (!text)
    return std::nullopt;
  BuildRecord record;
  bool has_status = false;
  std::istringstream in(*text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("status=", 0) == 0) {
      auto status = build_status_from_string(line.substr(7));
      if (!status)
        return std::nullopt;
      record.status = *status;
      has_status = true;
    } else if (line.rfind("reason=", 0) == 0) {
      record.reason = line.substr(7);
    }
  }
  if (!has_status)
    return std::nullopt;
  return record;
}

void save_measurement(const fs::path &dir, const ResourceMeasurement &m) {
  nlohmann::ordered_json doc;
  doc["time_s"] = m.exec_time_s;
  if (m.energy_j)
    doc["energy_j"] = *m.energy_j;
  if (m.avg_power_w)
    doc["power_w"] = *m.avg_power_w;
  doc["size_b"] = m.code_size_b;
  doc["repeats"] = m.repeats;
  doc["loop_count"] = m.loop_count;
  write_text(dir / "measurement.json", doc.dump(2) + "\n");
}

std::optional<ResourceMeasurement> load_measurement(const fs::path &dir) {
  auto text = read_text(dir / "measurement.json");
  if (!text)
    return std::nullopt;
  try {
    nlohmann::json doc = nlohmann::json::parse(*text);
    ResourceMeasurement m;
    m.exec_time_s = doc.at("time_s").get<double>();
    if (doc.contains("energy_j"))
      m.energy_j = doc["energy_j"].get<double>();
    if (doc.contains("power_w"))
      m.avg_power_w = doc["power_w"].get<double>();
    m.code_size_b = doc.at("size_b").get<std::uint64_t>();
    m.repeats = doc.at("repeats").get<int>();
    m.loop_count = doc.at("loop_count").get<std::uint64_t>();
    return m;
  } catch (const nlohmann::json::exception &) {
    return std::nullopt; // treat a corrupt record as absent
  }
}

std::string toolchain_label(const ToolchainSpec &spec) {
  auto argv = split_command(spec.optimizer_cmd);
  if (argv.empty())
    return "unknown";
  return fs::path(argv.front()).filename().string();
}

class ProgressLog {
public:
  explicit ProgressLog(std::ostream *sink) : sink_(sink) {}

  void line(const std::string &text) {
    if (!sink_)
      return;
    std::scoped_lock lock(mutex_);
    *sink_ << text << "\n";
  }

private:
  std::ostream *sink_;
  std::mutex mutex_;
};

} // namespace

ExploreOutcome run_exploration(const ExplorationConfig &config,
                               const ExploreOptions &options) {
  ExploreOutcome outcome;
  ProgressLog progress(options.progress);

  PassPipeline pipeline = PassPipeline::load(config.pipeline_file);
  if (!config.pipeline_label.empty())
    pipeline.source_label = config.pipeline_label;
  pipeline.level = config.toolchain.level;
  std::vector<OptConfig> configs = generate_configs(pipeline);
  const std::size_t baseline_index = configs.size() - 1;

  ToolchainDriver driver(config.toolchain);
  auto provider = make_provider(config.provider.kind, config.provider.command);

  int jobs = options.jobs.value_or(config.jobs);
  if (jobs < 1)
    throw ConfigError("jobs must be at least 1");
  outcome.out_dir = options.out_dir.value_or(config.out_dir);
  outcome.benchmarks_total = config.benchmarks.size();

  std::atomic<std::size_t> builds_performed{0};
  std::atomic<std::size_t> builds_reused{0};

  for (const BenchmarkSpec &bench : config.benchmarks) {
    progress.line("[" + bench.name + "] exploring " +
                  std::to_string(configs.size()) + " configurations");

    fs::path ir;
    try {
      std::string frontend_log;
      ir = driver.emit_unoptimized_ir(bench, &frontend_log);
    } catch (const ToolchainError &e) {
      outcome.failures.push_back(bench.name + ": frontend failed: " +
                                 one_line(e.what()));
      progress.line("[" + bench.name + "] frontend failed, skipping");
      continue;
    }

    // Build phase: full pipeline downward, in parallel up to the jobs
    // limit. Each configuration works in its own directory.
    std::vector<BuildRecord> records(configs.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t slot = cursor.fetch_add(1);
        if (slot >= configs.size())
          return;
        std::size_t index = configs.size() - 1 - slot; // N down to 0
        const OptConfig &opt_config = configs[index];
        fs::path dir = driver.config_dir(bench.name, index);
        fs::create_directories(dir);

        if (auto cached = load_build_record(dir)) {
          bool artifacts_ok = cached->status == BuildStatus::CompileFailed ||
                              fs::exists(dir / "app");
          if (artifacts_ok) {
            records[index] = *cached;
            builds_reused.fetch_add(1);
            continue;
          }
        }

        BuildRecord record;
        std::string log;
        try {
          fs::path opt_ir = driver.optimize(ir, opt_config, bench.name, &log);
          fs::path exe =
              driver.build_executable(opt_ir, bench.name, index, &log);
          std::string reason;
          record.status = driver.validate(exe, bench,
                                          config.validate_timeout_s, &reason,
                                          &log);
          record.reason = reason;
        } catch (const ToolchainError &e) {
          record.status = BuildStatus::CompileFailed;
          record.reason = one_line(e.what());
          if (log.empty())
            log = e.log();
        }
        write_text(dir / "build.log", log);
        save_build_record(dir, record);
        records[index] = record;
        builds_performed.fetch_add(1);
        if (record.status != BuildStatus::Built)
          progress.line("[" + bench.name + "] config " +
                        std::to_string(index) + " " +
                        std::string(to_string(record.status)) +
                        (record.reason.empty() ? "" : ": " + record.reason));
      }
    };
    {
      std::vector<std::thread> pool;
      int thread_count = std::min<std::size_t>(jobs, configs.size());
      for (int i = 0; i < thread_count; ++i)
        pool.emplace_back(worker);
      for (std::thread &t : pool)
        t.join();
    }

    if (records[baseline_index].status != BuildStatus::Built) {
      outcome.failures.push_back(
          bench.name + ": baseline config " + std::to_string(baseline_index) +
          " is unusable (" +
          std::string(to_string(records[baseline_index].status)) + ")");
      progress.line("[" + bench.name + "] baseline failed, skipping");
      continue;
    }

    // Calibration runs once per benchmark, on the baseline executable; the
    // loop count is reused for every configuration so per-iteration times
    // stay comparable.
    fs::path baseline_exe =
        driver.config_dir(bench.name, baseline_index) / "app";
    std::uint64_t loop_count = 1;
    fs::path calibration_file =
        config.toolchain.work_dir / bench.name / "calibration.txt";
    bool calibrated = false;
    if (auto cached = read_text(calibration_file)) {
      try {
        loop_count = std::stoull(*cached);
        calibrated = loop_count >= 1;
      } catch (const std::exception &) {
      }
    }
    if (!calibrated) {
      try {
        std::string warning;
        loop_count =
            calibrate(baseline_exe, bench, *provider, config.plan, &warning);
        if (!warning.empty())
          progress.line("[" + bench.name + "] " + warning);
        write_text(calibration_file, std::to_string(loop_count) + "\n");
      } catch (const MeasureError &e) {
        outcome.failures.push_back(bench.name + ": calibration failed: " +
                                   one_line(e.what()));
        progress.line("[" + bench.name + "] calibration failed, skipping");
        continue;
      }
    }

    // Measurement phase, sequential (measured runs are exclusive anyway).
    std::vector<ConfigResult> results(configs.size());
    for (std::size_t slot = 0; slot < configs.size(); ++slot) {
      std::size_t index = configs.size() - 1 - slot;
      ConfigResult &result = results[index];
      result.config_index = index;
      result.label = configs[index].label();
      result.total_flags = configs[index].total_flags();
      result.status = records[index].status;
      if (result.status != BuildStatus::Built)
        continue;

      fs::path dir = driver.config_dir(bench.name, index);
      if (auto cached = load_measurement(dir)) {
        result.measurement = *cached;
        outcome.measurements_reused += 1;
        continue;
      }
      try {
        ResourceMeasurement m =
            measure(dir / "app", bench, *provider, config.plan, loop_count,
                    config.toolchain.size_cmd);
        save_measurement(dir, m);
        result.measurement = m;
        outcome.measurements_performed += 1;
      } catch (const MeasureError &e) {
        result.status = BuildStatus::Unmeasured;
        progress.line("[" + bench.name + "] config " + std::to_string(index) +
                      " unmeasured: " + one_line(e.what()));
      }
    }

    try {
      outcome.profiles.push_back(build_profile(bench.name, std::move(results),
                                               baseline_index,
                                               config.epsilon_pct,
                                               config.criteria));
      outcome.benchmarks_completed += 1;
      const CompilationProfile &profile = outcome.profiles.back();
      for (const ConfigResult &result : profile.results)
        if (result.config_index == profile.best_config_index)
          progress.line("[" + bench.name + "] best: " + result.label);
    } catch (const SelectionError &e) {
      outcome.failures.push_back(bench.name + ": " + one_line(e.what()));
      progress.line("[" + bench.name + "] profile failed: " +
                    one_line(e.what()));
    }
  }

  outcome.builds_performed = builds_performed.load();
  outcome.builds_reused = builds_reused.load();
  outcome.summary = summarize(outcome.profiles);

  RunMetadata meta;
  meta.timestamp = options.fixed_timestamp.value_or(report_timestamp());
  meta.toolchain_label = toolchain_label(config.toolchain);
  meta.pipeline_source = pipeline.source_label;
  meta.level = config.toolchain.level;
  meta.tool_version = kVersion;
  meta.provider = config.provider.kind;
  meta.criteria = criteria_to_string(config.criteria);
  meta.flag_prefix = config.toolchain.flag_prefix;
  meta.epsilon_pct = config.epsilon_pct;
  meta.repeats = config.plan.repeats;
  meta.min_run_s = config.plan.min_run_s;
  meta.warmups = config.plan.warmups;
  meta.configs_total = configs.size();
  meta.configs_nonempty = configs.size() - 1;
  write_report_bundle(outcome.out_dir, outcome.profiles, outcome.summary,
                      meta, configs);

  progress.line("summary: " + std::to_string(outcome.benchmarks_completed) +
                "/" + std::to_string(outcome.benchmarks_total) +
                " benchmarks, builds " +
                std::to_string(outcome.builds_performed) + " performed / " +
                std::to_string(outcome.builds_reused) + " reused");
  return outcome;
}

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::optional<double> parse_opt_double(const std::string &text) {
  if (text.empty())
    return std::nullopt;
  return std::stod(text);
}

} // namespace

std::string run_selection(const fs::path &out_dir,
                          std::span<const Criterion> criteria,
                          double epsilon_pct) {
  auto summary_text = read_text(out_dir / "summary.json");
  auto configs_text = read_text(out_dir / "configs.json");
  if (!summary_text || !configs_text)
    throw ConfigError("no report bundle under " + out_dir.string() +
                      " (expected summary.json and configs.json)");

  nlohmann::json summary;
  nlohmann::json configs_doc;
  try {
    summary = nlohmann::json::parse(*summary_text);
    configs_doc = nlohmann::json::parse(*configs_text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("corrupt report bundle: ") + e.what());
  }

  std::string flag_prefix = configs_doc.value("flag_prefix", "-");
  struct ConfigInfo {
    std::string label;
    std::vector<std::string> flags;
  };
  std::vector<ConfigInfo> configs;
  for (const auto &entry : configs_doc.at("configs")) {
    ConfigInfo info;
    info.label = entry.at("label").get<std::string>();
    info.flags = entry.at("flags").get<std::vector<std::string>>();
    configs.push_back(std::move(info));
  }

  std::string output;
  for (const auto &bench_entry : summary.at("per_benchmark")) {
    std::string name = bench_entry.at("name").get<std::string>();
    auto csv_text = read_text(out_dir / name / "profile.csv");
    if (!csv_text)
      throw ConfigError("missing profile.csv for benchmark " + name);

    std::vector<ConfigResult> results;
    std::istringstream in(*csv_text);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
      if (line.empty())
        continue;
      auto fields = split_csv_line(line);
      if (fields.size() != 10)
        throw ParseError("malformed profile row for " + name + ": " + line);
      ConfigResult result;
      result.config_index = std::stoull(fields[0]);
      result.label = fields[1];
      result.total_flags = std::stoull(fields[2]);
      auto status = build_status_from_string(fields[3]);
      if (!status)
        throw ParseError("unknown status \"" + fields[3] + "\" for " + name);
      result.status = *status;
      if (!fields[4].empty()) {
        ResourceMeasurement m;
        m.exec_time_s = std::stod(fields[4]);
        if (!fields[5].empty())
          m.energy_j = std::stod(fields[5]);
        m.code_size_b = std::stoull(fields[6]);
        result.measurement = m;
      }
      result.d_time_pct = parse_opt_double(fields[7]);
      result.d_energy_pct = parse_opt_double(fields[8]);
      result.d_size_pct = parse_opt_double(fields[9]);
      results.push_back(std::move(result));
    }

    std::size_t best = select_best(results, epsilon_pct, criteria);
    if (best >= configs.size())
      throw ParseError("best config " + std::to_string(best) +
                       " is out of range for " + name);
    std::string flags;
    for (const std::string &flag : configs[best].flags) {
      if (!flags.empty())
        flags += ' ';
      flags += flag_prefix + flag;
    }
    output += name + "\t" + configs[best].label + "\t" + flags + "\n";
  }
  return output;
}

namespace {

// Name pools for demo pipelines; repeats are expected and exercised.
const char *const kDemoTransforms[] = {
    "mem2reg",     "instcombine", "simplifycfg", "gvn",
    "licm",        "loop-rotate", "loop-unroll", "sroa",
    "reassociate", "indvars",     "tailcallelim", "sccp",
    "dse",         "adce",        "jump-threading", "memcpyopt"};
const char *const kDemoAnalyses[] = {"domtree", "loops",  "basicaa",
                                     "aa",      "memdep", "scalar-evolution",
                                     "branch-prob", "block-freq"};

PassPipeline demo_pipeline(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  auto pick = [&rng](auto &pool) {
    return pool[rng() % (sizeof(pool) / sizeof(pool[0]))];
  };
  std::size_t transform_count = 8 + rng() % 8;
  std::vector<std::pair<std::string, PassKind>> passes;
  for (std::size_t i = 0; i < transform_count; ++i) {
    std::size_t analyses = rng() % 3;
    for (std::size_t a = 0; a < analyses; ++a)
      passes.emplace_back(pick(kDemoAnalyses), PassKind::Analysis);
    passes.emplace_back(pick(kDemoTransforms), PassKind::Transformation);
  }
  return PassPipeline::from_passes(passes);
}

} // namespace

MockDemoResult run_mock_demo(std::uint64_t seed,
                             std::optional<fs::path> root_dir,
                             std::optional<fs::path> mockc_binary,
                             std::ostream *progress) {
  MockDemoResult demo;
  demo.root = root_dir.value_or(fs::path("optprefix-demo"));
  fs::create_directories(demo.root / "src");

  fs::path mockc = mockc_binary ? *mockc_binary : find_mockc_binary();

  PassPipeline pipeline = demo_pipeline(seed);
  pipeline.source_label = "mock -O2 (seed " + std::to_string(seed) + ")";
  fs::path pipeline_file = demo.root / "pipeline.txt";
  write_text(pipeline_file, pipeline.serialize());

  const std::vector<std::string> benches = {"levenstein", "crc32", "fir"};
  CostModel model = CostModel::generate(seed, pipeline, benches);
  fs::path model_file = demo.root / "model.txt";
  model.save(model_file);

  MockToolchain mock =
      make_mock_toolchain(mockc, model_file, demo.root / "work");

  ExplorationConfig config;
  config.pipeline_file = pipeline_file;
  config.pipeline_label = pipeline.source_label;
  config.toolchain = mock.toolchain;
  config.provider.kind = mock.provider_kind;
  config.plan.repeats = 3;
  config.plan.min_run_s = 0.25;
  config.plan.warmups = 1;
  config.jobs = 2;
  config.out_dir = demo.root / "out";
  for (const std::string &name : benches) {
    BenchmarkSpec bench;
    bench.name = name;
    bench.sources = {demo.root / "src" / (name + ".mb")};
    bench.run_cmd = mock_run_command(mockc);
    bench.expected_exit = 0;
    write_text(bench.sources.front(), "bench=" + name + "\n");
    config.benchmarks.push_back(std::move(bench));
  }
  config.validate();

  ExploreOptions options;
  options.progress = progress;
  // Reports stay byte-identical across runs of the same seed.
  options.fixed_timestamp =
      std::getenv("SOURCE_DATE_EPOCH") ? report_timestamp()
                                       : format_timestamp(0);
  demo.outcome = run_exploration(config, options);
  demo.out_dir = demo.outcome.out_dir;

  auto summary = read_text(demo.out_dir / "summary.json");
  demo.summary_json = summary.value_or("");
  return demo;
}

} // namespace optprefix
