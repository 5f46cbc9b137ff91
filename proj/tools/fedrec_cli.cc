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

// fedrec command-line front end. All work goes through the C API.
//
//   fedrec_cli run [--config FILE] [--<key> VALUE ...]
//   fedrec_cli compare [--config FILE] [--csv PATH] [--<key> VALUE ...]
//   fedrec_cli gen-synthetic --behaviors PATH --news PATH [--<key> VALUE ...]
//   fedrec_cli convert-clicks --input PATH --behaviors PATH --news PATH
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "fedrec/fedrec.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigDeleter {
  void operator()(fedrec_config* c) const { fedrec_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<fedrec_config, ConfigDeleter>;

// Options shared by the subcommands that take a run configuration.
struct ConfigOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void AddConfigOptions(CLI::App* app, ConfigOptions& opts) {
  app->add_option("--config", opts.config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  for (size_t i = 0; i < fedrec_config_key_count(); ++i) {
    const std::string name = fedrec_config_key_name(i);
    opts.options[name] =
        app->add_option("--" + name, opts.values[name], fedrec_config_key_help(i));
  }
}

int Fail(fedrec_status status) {
  std::fprintf(stderr, "error: %s\n", fedrec_last_error());
  return status == FEDREC_ERR_CONFIG || status == FEDREC_ERR_INVALID_ARGUMENT
             ? kExitConfig
             : kExitRuntime;
}

// File, then environment, then flags.
fedrec_status BuildConfig(const ConfigOptions& opts, ConfigPtr& out) {
  fedrec_config* raw = nullptr;
  fedrec_status s = fedrec_config_create(&raw);
  if (s != FEDREC_OK) return s;
  out.reset(raw);
  if (!opts.config_file.empty()) {
    s = fedrec_config_load_file(raw, opts.config_file.c_str());
    if (s != FEDREC_OK) return s;
  }
  s = fedrec_config_apply_env(raw);
  if (s != FEDREC_OK) return s;
  for (size_t i = 0; i < fedrec_config_key_count(); ++i) {
    const std::string name = fedrec_config_key_name(i);
    if (opts.options.at(name)->count() == 0) continue;
    s = fedrec_config_set(raw, name.c_str(), opts.values.at(name).c_str());
    if (s != FEDREC_OK) return s;
  }
  return fedrec_config_validate(raw);
}

std::string GetKey(const fedrec_config* config, const char* key) {
  size_t needed = 0;
  fedrec_config_get(config, key, nullptr, 0, &needed);
  std::string value(needed, '\0');
  fedrec_config_get(config, key, value.data(), value.size(), nullptr);
  value.resize(needed ? needed - 1 : 0);
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fedrec: federated news recommendation simulator"};
  app.set_version_flag("--version", std::string(fedrec_version()));
  app.require_subcommand(1);

  ConfigOptions run_opts, compare_opts, synth_opts;
  auto* run = app.add_subcommand("run", "train and evaluate, writing reports");
  AddConfigOptions(run, run_opts);

  auto* compare =
      app.add_subcommand("compare", "efficient vs whole-model cost sweep");
  AddConfigOptions(compare, compare_opts);
  std::string compare_csv;
  compare->add_option("--csv", compare_csv, "output CSV (default <output_dir>/compare.csv)");

  auto* synth = app.add_subcommand("gen-synthetic",
                                   "write a synthetic dataset as MIND TSV files");
  AddConfigOptions(synth, synth_opts);
  std::string synth_behaviors, synth_news;
  synth->add_option("--behaviors", synth_behaviors, "behaviors.tsv to write")
      ->required();
  synth->add_option("--news", synth_news, "news.tsv to write")->required();

  auto* convert = app.add_subcommand(
      "convert-clicks", "convert a raw click log to MIND TSV files");
  std::string conv_input, conv_behaviors, conv_news;
  uint64_t conv_negatives = 20, conv_seed = 0;
  convert->add_option("--input", conv_input, "user<TAB>unix_seconds<TAB>item<TAB>title")
      ->required()
      ->check(CLI::ExistingFile);
  convert->add_option("--behaviors", conv_behaviors, "behaviors.tsv to write")
      ->required();
  convert->add_option("--news", conv_news, "news.tsv to write")->required();
  convert->add_option("--negatives", conv_negatives, "negatives per click");
  convert->add_option("--seed", conv_seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  ConfigPtr config;
  fedrec_status s = FEDREC_OK;
  if (*run) {
    if ((s = BuildConfig(run_opts, config)) != FEDREC_OK) return Fail(s);
    if ((s = fedrec_run_experiment(config.get())) != FEDREC_OK) return Fail(s);
    std::printf("wrote results to %s\n", GetKey(config.get(), "output_dir").c_str());
  } else if (*compare) {
    if ((s = BuildConfig(compare_opts, config)) != FEDREC_OK) return Fail(s);
    s = fedrec_compare_modes(config.get(),
                             compare_csv.empty() ? nullptr : compare_csv.c_str());
    if (s != FEDREC_OK) return Fail(s);
    std::printf("wrote %s\n",
                compare_csv.empty()
                    ? (GetKey(config.get(), "output_dir") + "/compare.csv").c_str()
                    : compare_csv.c_str());
  } else if (*synth) {
    if ((s = BuildConfig(synth_opts, config)) != FEDREC_OK) return Fail(s);
    s = fedrec_write_synthetic(config.get(), synth_behaviors.c_str(),
                               synth_news.c_str());
    if (s != FEDREC_OK) return Fail(s);
    std::printf("wrote %s and %s\n", synth_behaviors.c_str(), synth_news.c_str());
  } else if (*convert) {
    s = fedrec_convert_click_log(conv_input.c_str(), conv_behaviors.c_str(),
                                 conv_news.c_str(), conv_negatives, conv_seed);
    if (s != FEDREC_OK) return Fail(s);
    std::printf("wrote %s and %s\n", conv_behaviors.c_str(), conv_news.c_str());
  }
  return 0;
}
