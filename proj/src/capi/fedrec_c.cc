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

#include "fedrec/fedrec.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "cli/compare.h"
#include "cli/experiment.h"
#include "cli/run_config.h"
#include "common/error.h"
#include "data/click_log.h"
#include "data/synthetic.h"

struct fedrec_config {
  fedrec::cli::RunConfig config;
};

struct fedrec_experiment {
  std::unique_ptr<fedrec::cli::Experiment> experiment;
};

namespace {

thread_local std::string last_error;

fedrec_status StatusOf(fedrec::ErrorCode code) {
  switch (code) {
    case fedrec::ErrorCode::kInput: return FEDREC_ERR_INPUT;
    case fedrec::ErrorCode::kProtocol: return FEDREC_ERR_PROTOCOL;
    case fedrec::ErrorCode::kConfig: return FEDREC_ERR_CONFIG;
    case fedrec::ErrorCode::kIo: return FEDREC_ERR_IO;
    case fedrec::ErrorCode::kInternal: return FEDREC_ERR_INTERNAL;
  }
  return FEDREC_ERR_INTERNAL;
}

template <typename Fn>
fedrec_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return FEDREC_OK;
  } catch (const fedrec::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return FEDREC_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return FEDREC_ERR_INTERNAL;
  }
}

fedrec_status NullArgument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FEDREC_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* fedrec_version(void) { return "0.1.0"; }

const char* fedrec_last_error(void) { return last_error.c_str(); }

fedrec_status fedrec_config_create(fedrec_config** out) {
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] { *out = new fedrec_config(); });
}

void fedrec_config_destroy(fedrec_config* config) { delete config; }

fedrec_status fedrec_config_load_file(fedrec_config* config, const char* path) {
  if (!config) return NullArgument("config");
  if (!path) return NullArgument("path");
  return Guard([&] { fedrec::cli::ApplyConfigFile(config->config, path); });
}

fedrec_status fedrec_config_set(fedrec_config* config, const char* key,
                                const char* value) {
  if (!config) return NullArgument("config");
  if (!key) return NullArgument("key");
  if (!value) return NullArgument("value");
  return Guard([&] { fedrec::cli::SetConfigValue(config->config, key, value); });
}

fedrec_status fedrec_config_get(const fedrec_config* config, const char* key,
                                char* buffer, size_t buffer_len,
                                size_t* needed) {
  if (!config) return NullArgument("config");
  if (!key) return NullArgument("key");
  if (!buffer && buffer_len > 0) return NullArgument("buffer");
  return Guard([&] {
    const std::string value = fedrec::cli::GetConfigValue(config->config, key);
    if (needed) *needed = value.size() + 1;
    if (buffer_len > 0) {
      const size_t n = std::min(value.size(), buffer_len - 1);
      std::memcpy(buffer, value.data(), n);
      buffer[n] = '\0';
    }
  });
}

fedrec_status fedrec_config_apply_env(fedrec_config* config) {
  if (!config) return NullArgument("config");
  return Guard([&] { fedrec::cli::ApplyEnvironment(config->config); });
}

fedrec_status fedrec_config_validate(const fedrec_config* config) {
  if (!config) return NullArgument("config");
  return Guard([&] { config->config.Validate(); });
}

size_t fedrec_config_key_count(void) { return fedrec::cli::ConfigKeys().size(); }

const char* fedrec_config_key_name(size_t index) {
  const auto& keys = fedrec::cli::ConfigKeys();
  return index < keys.size() ? keys[index].name.c_str() : nullptr;
}

const char* fedrec_config_key_help(size_t index) {
  const auto& keys = fedrec::cli::ConfigKeys();
  return index < keys.size() ? keys[index].help.c_str() : nullptr;
}

fedrec_status fedrec_experiment_create(const fedrec_config* config,
                                       fedrec_experiment** out) {
  if (!config) return NullArgument("config");
  if (!out) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    auto exp = std::make_unique<fedrec_experiment>();
    exp->experiment = std::make_unique<fedrec::cli::Experiment>(config->config);
    *out = exp.release();
  });
}

void fedrec_experiment_destroy(fedrec_experiment* experiment) {
  delete experiment;
}

fedrec_status fedrec_experiment_run_rounds(fedrec_experiment* experiment,
                                           uint64_t rounds,
                                           fedrec_round_info* last) {
  if (!experiment) return NullArgument("experiment");
  return Guard([&] {
    for (uint64_t i = 0; i < rounds; ++i) {
      const auto& r = experiment->experiment->RunRound();
      if (last) {
        last->round = r.round;
        last->applied = r.applied ? 1 : 0;
        last->union_size = r.union_size;
        last->contributors = r.contributors;
        last->train_loss = r.train_loss;
        last->bytes_up = r.bytes_up;
        last->bytes_down = r.bytes_down;
      }
    }
  });
}

fedrec_status fedrec_experiment_evaluate(const fedrec_experiment* experiment,
                                         fedrec_metrics* out) {
  if (!experiment) return NullArgument("experiment");
  if (!out) return NullArgument("out");
  return Guard([&] {
    const auto e = experiment->experiment->Evaluate();
    out->round = experiment->experiment->round();
    out->auc = e.auc;
    out->mrr = e.mrr;
    out->ndcg5 = e.ndcg5;
    out->ndcg10 = e.ndcg10;
    out->impressions = e.impressions;
  });
}

uint64_t fedrec_experiment_round(const fedrec_experiment* experiment) {
  return experiment ? experiment->experiment->round() : 0;
}

fedrec_status fedrec_experiment_write_outputs(
    const fedrec_experiment* experiment, const char* dir) {
  if (!experiment) return NullArgument("experiment");
  return Guard([&] {
    const auto& exp = *experiment->experiment;
    exp.WriteOutputs(dir ? std::string(dir) : exp.config().output_dir);
  });
}

fedrec_status fedrec_run_experiment(const fedrec_config* config) {
  if (!config) return NullArgument("config");
  return Guard([&] { fedrec::cli::RunExperiment(config->config); });
}

fedrec_status fedrec_compare_modes(const fedrec_config* config,
                                   const char* csv_path) {
  if (!config) return NullArgument("config");
  return Guard([&] {
    const auto rows = fedrec::cli::CompareModes(config->config);
    std::filesystem::path path;
    if (csv_path) {
      path = csv_path;
    } else {
      std::filesystem::create_directories(config->config.output_dir);
      path = std::filesystem::path(config->config.output_dir) / "compare.csv";
    }
    std::ofstream out(path);
    if (!out) throw fedrec::IoError("cannot write " + path.string());
    fedrec::cli::WriteCompareCsv(out, rows);
    if (!out) throw fedrec::IoError("failed writing " + path.string());
  });
}

fedrec_status fedrec_write_synthetic(const fedrec_config* config,
                                     const char* behaviors_path,
                                     const char* news_path) {
  if (!config) return NullArgument("config");
  if (!behaviors_path) return NullArgument("behaviors_path");
  if (!news_path) return NullArgument("news_path");
  return Guard([&] {
    const auto data = fedrec::data::GenerateSynthetic(config->config.synthetic);
    fedrec::data::WriteMindTsv(data.dataset, behaviors_path, news_path);
  });
}

fedrec_status fedrec_convert_click_log(const char* input_path,
                                       const char* behaviors_path,
                                       const char* news_path,
                                       uint64_t negatives_per_click,
                                       uint64_t seed) {
  if (!input_path) return NullArgument("input_path");
  if (!behaviors_path) return NullArgument("behaviors_path");
  if (!news_path) return NullArgument("news_path");
  return Guard([&] {
    fedrec::data::ClickLogOptions options;
    options.negatives_per_click = negatives_per_click;
    options.seed = seed;
    fedrec::data::ConvertClickLogFile(input_path, behaviors_path, news_path,
                                      options);
  });
}

}  // extern "C"
