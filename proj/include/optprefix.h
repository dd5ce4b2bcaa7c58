/*===-- optprefix.h -----------------------------------------------*- C -*-===//
 *
 * Part of the optprefix project, under the Apache License v2.0.
 * See LICENSE for license information.
 * SPDX-License-Identifier: Apache-2.0
 *
 *===----------------------------------------------------------------------===//
 *
 * C API of the optprefix shared library: pass-pipeline parsing, prefix
 * configuration generation, and the explore / select / mock-demo entry
 * points. Objects are opaque handles freed with the matching *_free
 * function; every fallible call returns an optprefix_status and leaves a
 * human-readable message in optprefix_last_error() on failure. Strings
 * returned through char** out-parameters are owned by the caller and must
 * be released with optprefix_string_free().
 *
 *===----------------------------------------------------------------------===*/

#ifndef OPTPREFIX_H
#define OPTPREFIX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum optprefix_status {
  OPTPREFIX_OK = 0,
  OPTPREFIX_ERR_PARSE = 1,      /* malformed pipeline or report input */
  OPTPREFIX_ERR_CONFIG = 2,     /* bad exploration configuration */
  OPTPREFIX_ERR_TOOLCHAIN = 3,  /* a toolchain invocation failed */
  OPTPREFIX_ERR_MEASURE = 4,    /* measurement or calibration failed */
  OPTPREFIX_ERR_SELECT = 5,     /* profile construction / selection failed */
  OPTPREFIX_ERR_ALL_FAILED = 6, /* exploration finished no benchmark */
  OPTPREFIX_ERR_INVALID = 7,    /* invalid argument or handle */
  OPTPREFIX_ERR_INTERNAL = 8
} optprefix_status;

typedef struct optprefix_pipeline optprefix_pipeline;
typedef struct optprefix_config_list optprefix_config_list;

/* Library version, e.g. "0.1.0". The pointer is static. */
const char *optprefix_version(void);

/* Message of the calling thread's most recent failure; static storage,
 * overwritten by the next failing call on the same thread. */
const char *optprefix_last_error(void);

void optprefix_string_free(char *s);

/*
 * Pass pipelines. The file format is one entry per line: a kind tag
 * ("T" for transformation, "A" for analysis), one space, the pass name;
 * '#' lines and blank lines are ignored.
 */
optprefix_status optprefix_pipeline_parse(const char *text,
                                          optprefix_pipeline **out);
optprefix_status optprefix_pipeline_load(const char *path,
                                         optprefix_pipeline **out);
void optprefix_pipeline_free(optprefix_pipeline *pipeline);

size_t optprefix_pipeline_size(const optprefix_pipeline *pipeline);
size_t
optprefix_pipeline_transformation_count(const optprefix_pipeline *pipeline);
optprefix_status optprefix_pipeline_serialize(const optprefix_pipeline *p,
                                              char **out_text);

/*
 * Prefix configurations. Generation yields transformation_count + 1
 * configurations ordered by ascending index; config 0 is empty.
 */
optprefix_status optprefix_configs_generate(const optprefix_pipeline *pipeline,
                                            optprefix_config_list **out);
void optprefix_configs_free(optprefix_config_list *configs);

size_t optprefix_configs_count(const optprefix_config_list *configs);
/* Label convention: "<last transformation> (<total flags>)", "-O0 (0)" for
 * the empty configuration. Returns NULL on a bad index. */
const char *optprefix_config_label(const optprefix_config_list *configs,
                                   size_t config);
size_t optprefix_config_flag_count(const optprefix_config_list *configs,
                                   size_t config);
const char *optprefix_config_flag(const optprefix_config_list *configs,
                                  size_t config, size_t flag);

/* (value - baseline) / baseline * 100; negative means improvement. */
optprefix_status optprefix_improvement_pct(double value, double baseline,
                                           double *out_pct);

/*
 * Runs a full exploration from a configuration file. out_dir and jobs
 * override the file when non-NULL / positive. Partial failures still
 * return OPTPREFIX_OK with statuses recorded in the reports;
 * OPTPREFIX_ERR_ALL_FAILED means no benchmark completed. verbose != 0
 * logs progress to stderr.
 */
optprefix_status optprefix_explore(const char *config_path,
                                   const char *out_dir, int jobs,
                                   int verbose);

/* Re-runs best-config selection over an existing report bundle. criteria
 * is a comma-separated permutation of time,energy,size (NULL for the
 * default). The result is one line per benchmark: name, best label, flag
 * list, tab-separated. */
optprefix_status optprefix_select(const char *out_dir, const char *criteria,
                                  double epsilon_pct, char **out_text);

/* Self-contained mock exploration: generates a pipeline, cost model and
 * benchmark corpus from the seed under root_dir (NULL for
 * "./optprefix-demo") and explores it. Identical seeds produce
 * byte-identical summaries. */
optprefix_status optprefix_mock_demo(uint64_t seed, const char *root_dir,
                                     int verbose, char **out_summary_json);

#ifdef __cplusplus
}
#endif

#endif /* OPTPREFIX_H */
