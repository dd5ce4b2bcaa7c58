//===-- capi.cpp ----------------------------------------------------------===//
//
// Part of the optprefix project, under the Apache License v2.0.
// See LICENSE for license information.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// The extern "C" surface of the shared library. Exceptions from the core
// never cross the boundary: they are mapped to status codes and a
// thread-local error message.
//
//===----------------------------------------------------------------------===//

#include "optprefix.h"

#include "errors.hpp"
#include "explore.hpp"
#include "pipeline.hpp"
#include "selection.hpp"
#include "version.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

using namespace optprefix;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string &message) { g_last_error = message; }

optprefix_status fail(optprefix_status status, const std::string &message) {
  set_error(message);
  return status;
}

// Maps a caught exception to a status code.
optprefix_status from_exception() {
  try {
    throw;
  } catch (const ParseError &e) {
    return fail(OPTPREFIX_ERR_PARSE, e.what());
  } catch (const ConfigError &e) {
    return fail(OPTPREFIX_ERR_CONFIG, e.what());
  } catch (const ToolchainError &e) {
    return fail(OPTPREFIX_ERR_TOOLCHAIN, e.what());
  } catch (const MeasureError &e) {
    return fail(OPTPREFIX_ERR_MEASURE, e.what());
  } catch (const SelectionError &e) {
    return fail(OPTPREFIX_ERR_SELECT, e.what());
  } catch (const ModelError &e) {
    return fail(OPTPREFIX_ERR_CONFIG, e.what());
  } catch (const std::exception &e) {
    return fail(OPTPREFIX_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(OPTPREFIX_ERR_INTERNAL, "unknown error");
  }
}

char *copy_string(const std::string &text) {
  char *out = static_cast<char *>(std::malloc(text.size() + 1));
  if (out)
    std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

struct ConfigEntry {
  OptConfig config;
  std::string label;
};

} // namespace

struct optprefix_pipeline {
  PassPipeline pipeline;
};

struct optprefix_config_list {
  std::vector<ConfigEntry> entries;
};

extern "C" {

const char *optprefix_version(void) { return kVersion; }

const char *optprefix_last_error(void) { return g_last_error.c_str(); }

void optprefix_string_free(char *s) { std::free(s); }

optprefix_status optprefix_pipeline_parse(const char *text,
                                          optprefix_pipeline **out) {
  if (!text || !out)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  *out = nullptr;
  try {
    auto handle = new optprefix_pipeline{PassPipeline::parse(text)};
    *out = handle;
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

optprefix_status optprefix_pipeline_load(const char *path,
                                         optprefix_pipeline **out) {
  if (!path || !out)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  *out = nullptr;
  try {
    auto handle = new optprefix_pipeline{PassPipeline::load(path)};
    *out = handle;
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

void optprefix_pipeline_free(optprefix_pipeline *pipeline) { delete pipeline; }

size_t optprefix_pipeline_size(const optprefix_pipeline *pipeline) {
  return pipeline ? pipeline->pipeline.size() : 0;
}

size_t
optprefix_pipeline_transformation_count(const optprefix_pipeline *pipeline) {
  return pipeline ? pipeline->pipeline.transformation_count() : 0;
}

optprefix_status optprefix_pipeline_serialize(const optprefix_pipeline *p,
                                              char **out_text) {
  if (!p || !out_text)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  *out_text = copy_string(p->pipeline.serialize());
  if (!*out_text)
    return fail(OPTPREFIX_ERR_INTERNAL, "out of memory");
  return OPTPREFIX_OK;
}

optprefix_status optprefix_configs_generate(const optprefix_pipeline *pipeline,
                                            optprefix_config_list **out) {
  if (!pipeline || !out)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  *out = nullptr;
  try {
    auto handle = new optprefix_config_list;
    for (OptConfig &config : generate_configs(pipeline->pipeline)) {
      ConfigEntry entry;
      entry.label = config.label();
      entry.config = std::move(config);
      handle->entries.push_back(std::move(entry));
    }
    *out = handle;
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

void optprefix_configs_free(optprefix_config_list *configs) { delete configs; }

size_t optprefix_configs_count(const optprefix_config_list *configs) {
  return configs ? configs->entries.size() : 0;
}

const char *optprefix_config_label(const optprefix_config_list *configs,
                                   size_t config) {
  if (!configs || config >= configs->entries.size())
    return nullptr;
  return configs->entries[config].label.c_str();
}

size_t optprefix_config_flag_count(const optprefix_config_list *configs,
                                   size_t config) {
  if (!configs || config >= configs->entries.size())
    return 0;
  return configs->entries[config].config.total_flags();
}

const char *optprefix_config_flag(const optprefix_config_list *configs,
                                  size_t config, size_t flag) {
  if (!configs || config >= configs->entries.size())
    return nullptr;
  const OptConfig &entry = configs->entries[config].config;
  if (flag >= entry.flags.size())
    return nullptr;
  return entry.flags[flag].c_str();
}

optprefix_status optprefix_improvement_pct(double value, double baseline,
                                           double *out_pct) {
  if (!out_pct)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  try {
    *out_pct = improvement_pct(value, baseline);
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

optprefix_status optprefix_explore(const char *config_path,
                                   const char *out_dir, int jobs,
                                   int verbose) {
  if (!config_path)
    return fail(OPTPREFIX_ERR_INVALID, "null config path");
  try {
    ExplorationConfig config = ExplorationConfig::load(config_path);
    config.validate();

    ExploreOptions options;
    if (out_dir && *out_dir)
      options.out_dir = std::filesystem::path(out_dir);
    if (jobs > 0)
      options.jobs = jobs;
    if (verbose)
      options.progress = &std::cerr;

    ExploreOutcome outcome = run_exploration(config, options);
    if (outcome.all_failed()) {
      std::string detail;
      for (const std::string &failure : outcome.failures)
        detail += (detail.empty() ? "" : "; ") + failure;
      return fail(OPTPREFIX_ERR_ALL_FAILED,
                  "no benchmark completed: " + detail);
    }
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

optprefix_status optprefix_select(const char *out_dir, const char *criteria,
                                  double epsilon_pct, char **out_text) {
  if (!out_dir || !out_text)
    return fail(OPTPREFIX_ERR_INVALID, "null argument");
  *out_text = nullptr;
  try {
    std::vector<Criterion> order(kDefaultCriteria, kDefaultCriteria + 3);
    if (criteria && *criteria)
      order = parse_criteria(criteria);
    std::string text = run_selection(out_dir, order, epsilon_pct);
    *out_text = copy_string(text);
    if (!*out_text)
      return fail(OPTPREFIX_ERR_INTERNAL, "out of memory");
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

optprefix_status optprefix_mock_demo(uint64_t seed, const char *root_dir,
                                     int verbose, char **out_summary_json) {
  try {
    std::optional<std::filesystem::path> root;
    if (root_dir && *root_dir)
      root = std::filesystem::path(root_dir);
    MockDemoResult demo =
        run_mock_demo(seed, root, std::nullopt,
                      verbose ? &std::cerr : nullptr);
    if (out_summary_json) {
      *out_summary_json = copy_string(demo.summary_json);
      if (!*out_summary_json)
        return fail(OPTPREFIX_ERR_INTERNAL, "out of memory");
    }
    if (demo.outcome.all_failed())
      return fail(OPTPREFIX_ERR_ALL_FAILED, "mock demo completed no benchmark");
    return OPTPREFIX_OK;
  } catch (...) {
    return from_exception();
  }
}

} // extern "C"
