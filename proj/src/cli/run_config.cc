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

#include "cli/run_config.h"

#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "common/error.h"
#include "common/kv_config.h"

namespace fedrec::cli {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss{std::string(value)};
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string JoinList(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

// Key helpers over a field accessor.
template <typename Access>
ConfigKey Uint(std::string name, std::string help, Access access) {
  const std::string field = name;
  return {std::move(name), std::move(help),
          [access, field](RunConfig& c, std::string_view v) {
            using T = std::remove_reference_t<decltype(access(c))>;
            access(c) = static_cast<T>(ParseUint(v, field));
          },
          [access](const RunConfig& c) {
            return std::to_string(access(c));
          }};
}

template <typename Access>
ConfigKey Real(std::string name, std::string help, Access access) {
  const std::string field = name;
  return {std::move(name), std::move(help),
          [access, field](RunConfig& c, std::string_view v) {
            access(c) = ParseDouble(v, field);
          },
          [access](const RunConfig& c) {
            return FormatDouble(access(c));
          }};
}

template <typename Access>
ConfigKey Flag(std::string name, std::string help, Access access) {
  const std::string field = name;
  return {std::move(name), std::move(help),
          [access, field](RunConfig& c, std::string_view v) {
            access(c) = ParseBool(v, field);
          },
          [access](const RunConfig& c) {
            return std::string(access(c) ? "true"
                                                                  : "false");
          }};
}

std::vector<ConfigKey> BuildKeys() {
  std::vector<ConfigKey> k;
  k.push_back({"dataset", "synthetic | mind",
               [](RunConfig& c, std::string_view v) {
                 if (v == "synthetic") {
                   c.dataset = DatasetKind::kSynthetic;
                 } else if (v == "mind") {
                   c.dataset = DatasetKind::kMind;
                 } else {
                   throw ConfigError("dataset: expected synthetic or mind, got '" +
                                     std::string(v) + "'");
                 }
               },
               [](const RunConfig& c) {
                 return std::string(c.dataset == DatasetKind::kMind ? "mind"
                                                                    : "synthetic");
               }});
  k.push_back({"mind_behaviors", "comma-separated behaviors.tsv paths",
               [](RunConfig& c, std::string_view v) {
                 c.mind_behaviors = SplitList(v);
               },
               [](const RunConfig& c) { return JoinList(c.mind_behaviors); }});
  k.push_back({"mind_news", "comma-separated news.tsv paths",
               [](RunConfig& c, std::string_view v) { c.mind_news = SplitList(v); },
               [](const RunConfig& c) { return JoinList(c.mind_news); }});
  k.push_back(Uint("history_len", "clicks kept per history (M)",
                   [](auto& c) -> auto& { return c.mind.history_len; }));
  k.push_back(Uint("max_title_len", "tokens kept per title",
                   [](auto& c) -> auto& { return c.mind.max_title_len; }));
  k.push_back(Uint("vocab_size", "vocabulary cap for loaded data",
                   [](auto& c) -> auto& { return c.mind.vocab_size; }));
  k.push_back(Real("validation_fraction", "share of last-day impressions for validation",
                   [](auto& c) -> auto& { return c.mind.validation_fraction; }));

  k.push_back(Uint("synth_users", "synthetic users",
                   [](auto& c) -> auto& { return c.synthetic.num_users; }));
  k.push_back(Uint("synth_items", "synthetic items",
                   [](auto& c) -> auto& { return c.synthetic.num_items; }));
  k.push_back(Uint("synth_latent_dim", "synthetic latent dimension",
                   [](auto& c) -> auto& { return c.synthetic.latent_dim; }));
  k.push_back(Uint("synth_topics", "synthetic topic count",
                   [](auto& c) -> auto& { return c.synthetic.num_topics; }));
  k.push_back(Real("synth_spread", "latent spread around topic centers",
                   [](auto& c) -> auto& { return c.synthetic.topic_spread; }));
  k.push_back(Real("synth_noise", "click noise (0 = deterministic)",
                   [](auto& c) -> auto& { return c.synthetic.noise; }));
  k.push_back(Real("synth_threshold", "affinity at which a click is a coin flip",
                   [](auto& c) -> auto& { return c.synthetic.click_threshold; }));
  k.push_back(Uint("synth_history", "clicks per synthetic history",
                   [](auto& c) -> auto& { return c.synthetic.history_len; }));
  k.push_back(Uint("synth_train_impressions", "training impressions per user",
                   [](auto& c) -> auto& { return c.synthetic.train_impressions; }));
  k.push_back(Uint("synth_val_impressions", "validation impressions per user",
                   [](auto& c) -> auto& {
                     return c.synthetic.validation_impressions;
                   }));
  k.push_back(Uint("synth_test_impressions", "test impressions per user",
                   [](auto& c) -> auto& { return c.synthetic.test_impressions; }));
  k.push_back(Uint("synth_impression_size", "candidates per synthetic impression",
                   [](auto& c) -> auto& { return c.synthetic.impression_size; }));

  k.push_back(Uint("token_dim", "token embedding width",
                   [](auto& c) -> auto& { return c.federation.dims.token_dim; }));
  k.push_back(Uint("news_dim", "representation dimension d",
                   [](auto& c) -> auto& { return c.federation.dims.news_dim; }));
  k.push_back(Uint("num_heads", "self-attention heads",
                   [](auto& c) -> auto& { return c.federation.dims.num_heads; }));
  k.push_back(Uint("attention_dim", "additive attention width",
                   [](auto& c) -> auto& {
                     return c.federation.dims.attention_dim;
                   }));
  k.push_back({"pooling", "news encoder pooling: mean | attention",
               [](RunConfig& c, std::string_view v) {
                 if (v == "mean") {
                   c.federation.dims.pooling = recmodel::NewsPooling::kMean;
                 } else if (v == "attention") {
                   c.federation.dims.pooling = recmodel::NewsPooling::kAttention;
                 } else {
                   throw ConfigError("pooling: expected mean or attention");
                 }
               },
               [](const RunConfig& c) {
                 return std::string(c.federation.dims.pooling ==
                                            recmodel::NewsPooling::kMean
                                        ? "mean"
                                        : "attention");
               }});
  k.push_back(Real("init_scale", "parameters start in U(-s, s)",
                   [](auto& c) -> auto& { return c.federation.init_scale; }));
  k.push_back(Real("dropout", "history dropout rate during training",
                   [](auto& c) -> auto& { return c.federation.dropout; }));

  k.push_back(Real("learning_rate", "optimizer step size",
                   [](auto& c) -> auto& {
                     return c.federation.optimizer.learning_rate;
                   }));
  k.push_back(Real("beta1", "first-moment decay",
                   [](auto& c) -> auto& { return c.federation.optimizer.beta1; }));
  k.push_back(Real("beta2", "second-moment decay",
                   [](auto& c) -> auto& { return c.federation.optimizer.beta2; }));
  k.push_back(Real("tau", "second-moment offset inside the square root",
                   [](auto& c) -> auto& { return c.federation.optimizer.tau; }));
  k.push_back(Flag("add_step", "add the step instead of subtracting it",
                   [](auto& c) -> auto& {
                     return c.federation.optimizer.add_step;
                   }));
  k.push_back(Uint("group_size", "clients per round (S)",
                   [](auto& c) -> auto& { return c.federation.group_size; }));
  k.push_back(Uint("negatives", "negatives per clicked sample (K)",
                   [](auto& c) -> auto& { return c.federation.negatives; }));
  k.push_back({"mode", "efficient | whole_model",
               [](RunConfig& c, std::string_view v) {
                 if (v == "efficient") {
                   c.federation.mode = fedcore::TrainingMode::kEfficient;
                 } else if (v == "whole_model") {
                   c.federation.mode = fedcore::TrainingMode::kWholeModel;
                 } else {
                   throw ConfigError("mode: expected efficient or whole_model");
                 }
               },
               [](const RunConfig& c) {
                 return std::string(c.federation.mode ==
                                            fedcore::TrainingMode::kEfficient
                                        ? "efficient"
                                        : "whole_model");
               }});

  k.push_back(Flag("secure_aggregation", "mask uploads with secure aggregation",
                   [](auto& c) -> auto& {
                     return c.federation.secure_aggregation;
                   }));
  k.push_back(Uint("threshold", "secret-sharing threshold t (0 = ceil(S/2))",
                   [](auto& c) -> auto& { return c.federation.threshold; }));
  k.push_back(Uint("fractional_bits", "fixed-point fractional bits",
                   [](auto& c) -> auto& {
                     return c.federation.fractional_bits;
                   }));
  k.push_back({"prg", "mask generator: mt19937 | chacha20",
               [](RunConfig& c, std::string_view v) {
                 try {
                   c.federation.prg = secagg::ParsePrgKind(v);
                 } catch (const Error& e) {
                   throw ConfigError(std::string("prg: ") + e.what());
                 }
               },
               [](const RunConfig& c) {
                 return std::string(secagg::PrgKindName(c.federation.prg));
               }});

  k.push_back(Uint("rounds", "training rounds T",
                   [](auto& c) -> auto& { return c.rounds; }));
  k.push_back(Uint("eval_every", "evaluation cadence in rounds (0 = final only)",
                   [](auto& c) -> auto& { return c.eval_every; }));
  k.push_back(Flag("eval_on_test", "evaluate on test instead of validation",
                   [](auto& c) -> auto& { return c.eval_on_test; }));
  k.push_back(Flag("include_single_class",
                   "score single-class impressions for MRR and nDCG",
                   [](auto& c) -> auto& { return c.include_single_class; }));
  k.push_back({"faults", "client drops: round:client:phase,...",
               [](RunConfig& c, std::string_view v) { c.faults = Trim(v); },
               [](const RunConfig& c) { return c.faults; }});
  k.push_back({"compare_factors", "token_dim multipliers for compare",
               [](RunConfig& c, std::string_view v) {
                 c.compare_factors.clear();
                 for (const auto& s : SplitList(v)) {
                   c.compare_factors.push_back(ParseUint(s, "compare_factors"));
                 }
               },
               [](const RunConfig& c) {
                 std::string out;
                 for (auto f : c.compare_factors) {
                   out += (out.empty() ? "" : ",") + std::to_string(f);
                 }
                 return out;
               }});
  k.push_back(Uint("compare_rounds", "rounds per compare point",
                   [](auto& c) -> auto& { return c.compare_rounds; }));
  k.push_back({"output_dir", "output directory",
               [](RunConfig& c, std::string_view v) { c.output_dir = Trim(v); },
               [](const RunConfig& c) { return c.output_dir; }});
  k.push_back({"seed", "seed for data, sampling and protocol randomness",
               [](RunConfig& c, std::string_view v) {
                 c.seed = ParseUint(v, "seed");
                 c.synthetic.seed = c.seed;
                 c.mind.seed = c.seed;
                 c.federation.seed = c.seed;
               },
               [](const RunConfig& c) { return std::to_string(c.seed); }});
  return k;
}

}  // namespace

const std::vector<ConfigKey>& ConfigKeys() {
  static const std::vector<ConfigKey> keys = BuildKeys();
  return keys;
}

const ConfigKey* FindConfigKey(std::string_view name) {
  for (const auto& k : ConfigKeys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

void SetConfigValue(RunConfig& config, std::string_view key,
                    std::string_view value) {
  const ConfigKey* k = FindConfigKey(key);
  if (!k) throw ConfigError("unknown config key '" + std::string(key) + "'");
  k->set(config, Trim(value));
}

std::string GetConfigValue(const RunConfig& config, std::string_view key) {
  const ConfigKey* k = FindConfigKey(key);
  if (!k) throw ConfigError("unknown config key '" + std::string(key) + "'");
  return k->get(config);
}

void ApplyConfigFile(RunConfig& config, const std::string& path) {
  for (const auto& kv : ReadKeyValueFile(path)) {
    try {
      SetConfigValue(config, kv.key, kv.value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(kv.line) + ": " + e.what());
    }
  }
}

void ApplyEnvironment(RunConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
    config.output_dir = dir;
  }
}

std::string DumpConfig(const RunConfig& config) {
  std::string out;
  for (const auto& k : ConfigKeys()) out += k.name + " = " + k.get(config) + "\n";
  return out;
}

netsim::FaultPlan RunConfig::ParsedFaults() const {
  netsim::FaultPlan plan;
  for (const auto& entry : SplitList(faults)) {
    const size_t a = entry.find(':');
    const size_t b = a == std::string::npos ? a : entry.find(':', a + 1);
    if (b == std::string::npos) {
      throw ConfigError("faults: expected round:client:phase, got '" + entry + "'");
    }
    const uint64_t round = ParseUint(entry.substr(0, a), "faults round");
    const uint64_t client = ParseUint(entry.substr(a + 1, b - a - 1), "faults client");
    auto phase = netsim::ParseDropPhase(entry.substr(b + 1));
    if (!phase) throw ConfigError("faults: unknown phase in '" + entry + "'");
    plan.Add(round, static_cast<uint32_t>(client), *phase);
  }
  return plan;
}

void RunConfig::Validate() const {
  if (dataset == DatasetKind::kMind) {
    if (mind_behaviors.empty() || mind_news.empty()) {
      throw ConfigError("mind_behaviors and mind_news are required for dataset = mind");
    }
    for (const auto* list : {&mind_behaviors, &mind_news}) {
      for (const auto& p : *list) {
        if (!std::filesystem::exists(p)) {
          throw ConfigError("data file not found: " + p);
        }
      }
    }
  } else {
    synthetic.Validate();
  }
  if (mind.history_len == 0) throw ConfigError("history_len must be positive");
  if (mind.vocab_size == 0) throw ConfigError("vocab_size must be positive");
  if (mind.max_title_len == 0) throw ConfigError("max_title_len must be positive");
  if (!(mind.validation_fraction >= 0 && mind.validation_fraction <= 1)) {
    throw ConfigError("validation_fraction must lie in [0, 1]");
  }
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (compare_factors.empty()) throw ConfigError("compare_factors must not be empty");
  for (auto f : compare_factors) {
    if (f == 0) throw ConfigError("compare_factors must be positive");
  }
  auto fed = federation;
  fed.dims.vocab_size = std::max<size_t>(fed.dims.vocab_size, 1);
  fed.Validate();
  ParsedFaults();
}

}  // namespace fedrec::cli
