//===-- selection.cpp -----------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "selection.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace optprefix {

std::vector<Criterion> parse_criteria(std::string_view text) {
  std::vector<Criterion> criteria;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    // allow spaces around entries
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (token == "time")
      criteria.push_back(Criterion::Time);
    else if (token == "energy")
      criteria.push_back(Criterion::Energy);
    else if (token == "size")
      criteria.push_back(Criterion::Size);
    else
      throw ConfigError("unknown selection criterion: \"" + token + "\"");
  }
  if (criteria.empty())
    throw ConfigError("empty criteria list");
  for (std::size_t i = 0; i < criteria.size(); ++i)
    for (std::size_t j = i + 1; j < criteria.size(); ++j)
      if (criteria[i] == criteria[j])
        throw ConfigError("criteria list repeats an entry");
  return criteria;
}

std::string criteria_to_string(std::span<const Criterion> criteria) {
  std::string out;
  for (Criterion c : criteria) {
    if (!out.empty())
      out += ',';
    switch (c) {
    case Criterion::Time:
      out += "time";
      break;
    case Criterion::Energy:
      out += "energy";
      break;
    case Criterion::Size:
      out += "size";
      break;
    }
  }
  return out;
}

double improvement_pct(double value, double baseline) {
  if (!(baseline > 0.0))
    throw SelectionError("baseline quantity must be positive, got " +
                         std::to_string(baseline));
  return (value - baseline) / baseline * 100.0;
}

double round_pct(double pct) {
  double rounded = std::round(pct * 100.0) / 100.0;
  return rounded == 0.0 ? 0.0 : rounded; // normalize -0
}

namespace {

const std::optional<double> &delta_for(const ConfigResult &result,
                                       Criterion criterion) {
  switch (criterion) {
  case Criterion::Time:
    return result.d_time_pct;
  case Criterion::Energy:
    return result.d_energy_pct;
  case Criterion::Size:
    return result.d_size_pct;
  }
  return result.d_time_pct; // unreachable
}

} // namespace

std::size_t select_best(const std::vector<ConfigResult> &results,
                        double epsilon_pct,
                        std::span<const Criterion> criteria) {
  std::vector<const ConfigResult *> candidates;
  for (const ConfigResult &result : results)
    if (result.status == BuildStatus::Built && result.measurement)
      candidates.push_back(&result);
  if (candidates.empty())
    throw SelectionError("no built and measured configuration to select from");

  for (Criterion criterion : criteria) {
    // A tier only applies when every remaining candidate carries the value.
    bool all_present =
        std::all_of(candidates.begin(), candidates.end(),
                    [&](const ConfigResult *r) {
                      return delta_for(*r, criterion).has_value();
                    });
    if (!all_present)
      continue;
    double best = std::numeric_limits<double>::infinity();
    for (const ConfigResult *r : candidates)
      best = std::min(best, *delta_for(*r, criterion));
    std::erase_if(candidates, [&](const ConfigResult *r) {
      return *delta_for(*r, criterion) > best + epsilon_pct;
    });
  }

  const ConfigResult *winner = *std::max_element(
      candidates.begin(), candidates.end(),
      [](const ConfigResult *a, const ConfigResult *b) {
        return a->config_index < b->config_index;
      });
  return winner->config_index;
}

CompilationProfile build_profile(std::string benchmark,
                                 std::vector<ConfigResult> results,
                                 std::size_t baseline_index,
                                 double epsilon_pct,
                                 std::span<const Criterion> criteria) {
  std::sort(results.begin(), results.end(),
            [](const ConfigResult &a, const ConfigResult &b) {
              return a.config_index < b.config_index;
            });

  const ConfigResult *baseline = nullptr;
  for (const ConfigResult &result : results)
    if (result.config_index == baseline_index)
      baseline = &result;
  if (!baseline)
    throw SelectionError("benchmark " + benchmark +
                         ": baseline config is missing from the results");
  if (baseline->status != BuildStatus::Built || !baseline->measurement)
    throw SelectionError("benchmark " + benchmark +
                         ": baseline config " +
                         std::to_string(baseline_index) +
                         " is not built and measured (" +
                         std::string(to_string(baseline->status)) + ")");

  const ResourceMeasurement &base = *baseline->measurement;
  for (ConfigResult &result : results) {
    result.d_time_pct.reset();
    result.d_energy_pct.reset();
    result.d_size_pct.reset();
    if (result.status != BuildStatus::Built || !result.measurement)
      continue;
    const ResourceMeasurement &m = *result.measurement;
    result.d_time_pct = round_pct(improvement_pct(m.exec_time_s, base.exec_time_s));
    if (m.energy_j && base.energy_j)
      result.d_energy_pct = round_pct(improvement_pct(*m.energy_j, *base.energy_j));
    result.d_size_pct =
        round_pct(improvement_pct(static_cast<double>(m.code_size_b),
                                  static_cast<double>(base.code_size_b)));
  }

  CompilationProfile profile;
  profile.benchmark = std::move(benchmark);
  profile.baseline_config_index = baseline_index;
  profile.best_config_index = select_best(results, epsilon_pct, criteria);
  profile.results = std::move(results);
  return profile;
}

SuiteSummary summarize(const std::vector<CompilationProfile> &profiles) {
  SuiteSummary summary;
  summary.benchmark_count = profiles.size();

  double delta_sum = 0.0;
  for (const CompilationProfile &profile : profiles) {
    const ConfigResult *best = nullptr;
    for (const ConfigResult &result : profile.results) {
      summary.configs_tested += 1;
      if (result.status != BuildStatus::CompileFailed)
        summary.configs_built += 1;
      if (result.status == BuildStatus::Built)
        summary.configs_valid += 1;
      if (result.config_index == profile.best_config_index)
        best = &result;
    }
    if (!best)
      throw SelectionError("profile " + profile.benchmark +
                           " has no row for its best config");

    SuiteSummary::BenchmarkBest entry;
    entry.name = profile.benchmark;
    entry.best_index = best->config_index;
    entry.best_label = best->label;
    entry.d_time_pct = best->d_time_pct;
    entry.d_energy_pct = best->d_energy_pct;
    entry.d_size_pct = best->d_size_pct;
    summary.per_benchmark.push_back(std::move(entry));

    double d_time = best->d_time_pct.value_or(0.0);
    delta_sum += d_time;
    if (d_time <= -1.0)
      summary.improved_count += 1;
    if (!summary.min_time_improvement_pct ||
        d_time < *summary.min_time_improvement_pct)
      summary.min_time_improvement_pct = d_time;
    if (!summary.max_time_improvement_pct ||
        d_time > *summary.max_time_improvement_pct)
      summary.max_time_improvement_pct = d_time;
  }

  if (!profiles.empty())
    summary.mean_time_improvement_pct =
        delta_sum / static_cast<double>(profiles.size());
  return summary;
}

} // namespace optprefix
