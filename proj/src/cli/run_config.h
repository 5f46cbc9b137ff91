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

#ifndef FEDREC_CLI_RUN_CONFIG_H_
#define FEDREC_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "data/mind_loader.h"
#include "data/synthetic.h"
#include "fedcore/federation.h"
#include "netsim/fault_plan.h"

namespace fedrec::cli {

enum class DatasetKind { kSynthetic, kMind };

// Everything one experiment needs. Every field is reachable through a key
// of ConfigKeys(), used by both the config file and the command line.
struct RunConfig {
  DatasetKind dataset = DatasetKind::kSynthetic;
  std::vector<std::string> mind_behaviors;
  std::vector<std::string> mind_news;
  data::MindOptions mind;
  data::SyntheticSpec synthetic;

  fedcore::FederationConfig federation;
  uint64_t rounds = 10;
  uint64_t eval_every = 1;              // 0 evaluates only at the end
  bool eval_on_test = false;            // default: validation split
  bool include_single_class = false;
  std::string faults;                   // "round:client:phase,..."
  std::vector<uint64_t> compare_factors = {1, 2, 4, 8};
  uint64_t compare_rounds = 1;
  std::string output_dir = "fedrec_out";
  uint64_t seed = 1;  // also seeds the data and the federation

  // Throws ConfigError naming the offending key.
  void Validate() const;
  netsim::FaultPlan ParsedFaults() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<ConfigKey>& ConfigKeys();
const ConfigKey* FindConfigKey(std::string_view name);

// Sets one key; throws ConfigError for unknown keys or bad values.
void SetConfigValue(RunConfig& config, std::string_view key,
                    std::string_view value);
std::string GetConfigValue(const RunConfig& config, std::string_view key);

// Applies a key-value file on top of `config`.
void ApplyConfigFile(RunConfig& config, const std::string& path);
// Applies FEDREC_OUTPUT_DIR when set.
void ApplyEnvironment(RunConfig& config);

// key = value lines for every key, in table order.
std::string DumpConfig(const RunConfig& config);

inline constexpr char kOutputDirEnv[] = "FEDREC_OUTPUT_DIR";

}  // namespace fedrec::cli

#endif  // FEDREC_CLI_RUN_CONFIG_H_
