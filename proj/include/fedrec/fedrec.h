// Copyright 2026 The fedrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the fedrec federated recommendation simulator.
 *
 * Objects are opaque handles created and destroyed through this API.
 * Functions returning fedrec_status report failures through the status
 * code; fedrec_last_error() then describes the most recent failure on the
 * calling thread. Strings returned by the library stay valid until the
 * next call on the same thread unless stated otherwise.
 */
#ifndef FEDREC_FEDREC_H_
#define FEDREC_FEDREC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FEDREC_BUILDING_LIBRARY)
#define FEDREC_API __attribute__((visibility("default")))
#else
#define FEDREC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fedrec_status {
  FEDREC_OK = 0,
  FEDREC_ERR_INVALID_ARGUMENT = 1, /* null handle or pointer */
  FEDREC_ERR_CONFIG = 2,           /* invalid configuration */
  FEDREC_ERR_INPUT = 3,            /* malformed input data */
  FEDREC_ERR_PROTOCOL = 4,         /* protocol violation or abort */
  FEDREC_ERR_IO = 5,               /* filesystem failure */
  FEDREC_ERR_INTERNAL = 6
} fedrec_status;

typedef struct fedrec_config fedrec_config;
typedef struct fedrec_experiment fedrec_experiment;

typedef struct fedrec_metrics {
  uint64_t round;
  double auc;
  double mrr;
  double ndcg5;
  double ndcg10;
  uint64_t impressions;
} fedrec_metrics;

typedef struct fedrec_round_info {
  uint64_t round;
  int applied; /* nonzero when the model was updated */
  uint64_t union_size;
  uint64_t contributors;
  double train_loss;
  uint64_t bytes_up;
  uint64_t bytes_down;
} fedrec_round_info;

FEDREC_API const char* fedrec_version(void);
/* Message of the last failed call on this thread, or "" if none. */
FEDREC_API const char* fedrec_last_error(void);

/* Configuration: defaults, then file and key overrides. */
FEDREC_API fedrec_status fedrec_config_create(fedrec_config** out);
FEDREC_API void fedrec_config_destroy(fedrec_config* config);
FEDREC_API fedrec_status fedrec_config_load_file(fedrec_config* config,
                                                 const char* path);
FEDREC_API fedrec_status fedrec_config_set(fedrec_config* config,
                                           const char* key, const char* value);
/* Copies the value of `key` into `buffer` (NUL-terminated, truncated to
 * `buffer_len`). `needed`, when not null, receives the full length plus
 * one. `buffer` may be null when `buffer_len` is 0. */
FEDREC_API fedrec_status fedrec_config_get(const fedrec_config* config,
                                           const char* key, char* buffer,
                                           size_t buffer_len, size_t* needed);
/* Applies the FEDREC_OUTPUT_DIR environment override. */
FEDREC_API fedrec_status fedrec_config_apply_env(fedrec_config* config);
FEDREC_API fedrec_status fedrec_config_validate(const fedrec_config* config);
/* The key table. Returned strings live as long as the library. */
FEDREC_API size_t fedrec_config_key_count(void);
FEDREC_API const char* fedrec_config_key_name(size_t index);
FEDREC_API const char* fedrec_config_key_help(size_t index);

/* Experiments: load data, train round by round, evaluate, write files. */
FEDREC_API fedrec_status fedrec_experiment_create(const fedrec_config* config,
                                                  fedrec_experiment** out);
FEDREC_API void fedrec_experiment_destroy(fedrec_experiment* experiment);
/* Runs `rounds` rounds. `last`, when not null, receives the final one. */
FEDREC_API fedrec_status fedrec_experiment_run_rounds(
    fedrec_experiment* experiment, uint64_t rounds, fedrec_round_info* last);
FEDREC_API fedrec_status fedrec_experiment_evaluate(
    const fedrec_experiment* experiment, fedrec_metrics* out);
FEDREC_API uint64_t fedrec_experiment_round(const fedrec_experiment* experiment);
/* Writes metrics, costs, timings, summary and checkpoint files. A null
 * `dir` uses the configured output directory. */
FEDREC_API fedrec_status fedrec_experiment_write_outputs(
    const fedrec_experiment* experiment, const char* dir);

/* Whole runs. */
FEDREC_API fedrec_status fedrec_run_experiment(const fedrec_config* config);
/* Efficient vs whole-model cost sweep. A null `csv_path` writes
 * compare.csv in the configured output directory. */
FEDREC_API fedrec_status fedrec_compare_modes(const fedrec_config* config,
                                              const char* csv_path);

/* Data tools. */
FEDREC_API fedrec_status fedrec_write_synthetic(const fedrec_config* config,
                                                const char* behaviors_path,
                                                const char* news_path);
FEDREC_API fedrec_status fedrec_convert_click_log(const char* input_path,
                                                  const char* behaviors_path,
                                                  const char* news_path,
                                                  uint64_t negatives_per_click,
                                                  uint64_t seed);

#ifdef __cplusplus
}
#endif

#endif /* FEDREC_FEDREC_H_ */
