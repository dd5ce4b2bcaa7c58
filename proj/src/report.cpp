//===-- report.cpp --------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "report.hpp"

#include "errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include <json.hpp>

namespace optprefix {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_timestamp(std::int64_t unix_seconds) {
  std::time_t t = static_cast<std::time_t>(unix_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string report_timestamp() {
  if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"))
    return format_timestamp(std::strtoll(epoch, nullptr, 10));
  return format_timestamp(static_cast<std::int64_t>(std::time(nullptr)));
}

namespace {

std::string pct_str(const std::optional<double> &value) {
  if (!value)
    return "";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *value);
  return buf;
}

std::string sig6_str(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

} // namespace

std::string emit_profile_csv(const CompilationProfile &profile) {
  std::string csv = "config_index,label,total_flags,status,time_s,energy_j,"
                    "size_b,d_time_pct,d_energy_pct,d_size_pct\n";
  for (const ConfigResult &result : profile.results) {
    csv += std::to_string(result.config_index);
    csv += ',';
    csv += result.label;
    csv += ',';
    csv += std::to_string(result.total_flags);
    csv += ',';
    csv += to_string(result.status);
    csv += ',';
    if (result.measurement) {
      const ResourceMeasurement &m = *result.measurement;
      csv += sig6_str(m.exec_time_s);
      csv += ',';
      csv += m.energy_j ? sig6_str(*m.energy_j) : "";
      csv += ',';
      csv += std::to_string(m.code_size_b);
    } else {
      csv += ",,";
    }
    csv += ',';
    csv += pct_str(result.d_time_pct);
    csv += ',';
    csv += pct_str(result.d_energy_pct);
    csv += ',';
    csv += pct_str(result.d_size_pct);
    csv += '\n';
  }
  return csv;
}

std::string emit_plot_data(const CompilationProfile &profile) {
  // Columns: quoted label, then the three deltas; absent values print as
  // nan so generic plotting tools treat them as missing points.
  std::string dat = "# label d_time_pct d_energy_pct d_size_pct\n";
  for (const ConfigResult &result : profile.results) {
    dat += '"';
    dat += result.label;
    dat += '"';
    for (const auto &delta :
         {result.d_time_pct, result.d_energy_pct, result.d_size_pct}) {
      dat += ' ';
      dat += delta ? pct_str(delta) : "nan";
    }
    dat += '\n';
  }
  return dat;
}

namespace {

// Percentages go into JSON as numbers; they are already rounded to two
// decimals so the shortest round-trip representation is stable.
ordered_json pct_json(const std::optional<double> &value) {
  if (!value)
    return nullptr;
  return *value;
}

double round1(double value) {
  double rounded = std::round(value * 10.0) / 10.0;
  return rounded == 0.0 ? 0.0 : rounded;
}

} // namespace

std::string emit_summary(const SuiteSummary &summary, const RunMetadata &meta) {
  ordered_json doc;
  // The suite mean is reported to one decimal place.
  doc["mean_time_improvement_pct"] = round1(summary.mean_time_improvement_pct);
  doc["improved_count"] = summary.improved_count;
  doc["benchmark_count"] = summary.benchmark_count;

  ordered_json benchmarks = ordered_json::array();
  for (const SuiteSummary::BenchmarkBest &best : summary.per_benchmark) {
    ordered_json entry;
    entry["name"] = best.name;
    entry["best_label"] = best.best_label;
    entry["best_index"] = best.best_index;
    entry["d_time_pct"] = pct_json(best.d_time_pct);
    entry["d_energy_pct"] = pct_json(best.d_energy_pct);
    entry["d_size_pct"] = pct_json(best.d_size_pct);
    benchmarks.push_back(std::move(entry));
  }
  doc["per_benchmark"] = std::move(benchmarks);

  ordered_json metadata;
  metadata["timestamp"] = meta.timestamp;
  metadata["toolchain"] = meta.toolchain_label;
  metadata["pipeline_source"] = meta.pipeline_source;
  metadata["level"] = meta.level;
  metadata["tool_version"] = meta.tool_version;
  metadata["provider"] = meta.provider;
  metadata["criteria"] = meta.criteria;
  metadata["flag_prefix"] = meta.flag_prefix;
  metadata["epsilon_pct"] = meta.epsilon_pct;
  metadata["repeats"] = meta.repeats;
  metadata["min_run_s"] = meta.min_run_s;
  metadata["warmups"] = meta.warmups;
  metadata["configs_total"] = meta.configs_total;
  metadata["configs_nonempty"] = meta.configs_nonempty;
  metadata["configs_tested"] = summary.configs_tested;
  metadata["configs_built"] = summary.configs_built;
  metadata["configs_valid"] = summary.configs_valid;
  metadata["best_time_improvement_pct"] =
      pct_json(summary.min_time_improvement_pct);
  metadata["worst_time_improvement_pct"] =
      pct_json(summary.max_time_improvement_pct);
  doc["metadata"] = std::move(metadata);

  return doc.dump(2) + "\n";
}

std::string emit_configs(const std::vector<OptConfig> &configs,
                         const std::string &flag_prefix) {
  ordered_json doc;
  doc["flag_prefix"] = flag_prefix;
  ordered_json list = ordered_json::array();
  for (const OptConfig &config : configs) {
    ordered_json entry;
    entry["index"] = config.index;
    entry["label"] = config.label();
    entry["total_flags"] = config.total_flags();
    entry["last_transformation"] = config.last_transformation;
    entry["flags"] = config.flags;
    list.push_back(std::move(entry));
  }
  doc["configs"] = std::move(list);
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write report file " + path.string());
  out << content;
  if (!out)
    throw ConfigError("failed writing report file " + path.string());
}

} // namespace

void write_report_bundle(const fs::path &out_dir,
                         const std::vector<CompilationProfile> &profiles,
                         const SuiteSummary &summary, const RunMetadata &meta,
                         const std::vector<OptConfig> &configs) {
  fs::create_directories(out_dir);
  write_file(out_dir / "summary.json", emit_summary(summary, meta));
  write_file(out_dir / "configs.json", emit_configs(configs, meta.flag_prefix));
  for (const CompilationProfile &profile : profiles) {
    fs::path bench_dir = out_dir / profile.benchmark;
    fs::create_directories(bench_dir);
    write_file(bench_dir / "profile.csv", emit_profile_csv(profile));
    write_file(bench_dir / "profile.dat", emit_plot_data(profile));
  }
}

} // namespace optprefix
