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

#ifndef FEDREC_CLI_EXPERIMENT_H_
#define FEDREC_CLI_EXPERIMENT_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cli/metrics.h"
#include "cli/run_config.h"
#include "data/corpus.h"
#include "fedcore/federation.h"

namespace fedrec::cli {

struct MetricsRow {
  uint64_t round = 0;
  std::optional<double> loss;
  std::optional<EvalResult> eval;
};

// Loads or generates the dataset named by `config`.
data::Dataset LoadDataset(const RunConfig& config);

// One training run: dataset, federation and the per-round record.
class Experiment {
 public:
  explicit Experiment(const RunConfig& config);
  Experiment(const RunConfig& config, data::Dataset dataset);

  // Evaluates the current model on the configured split.
  EvalResult Evaluate() const;
  // Runs one round and records its metrics row.
  const fedcore::RoundReport& RunRound();
  // Round-0 evaluation if not yet recorded, then the remaining rounds.
  void Run();

  uint64_t round() const { return federation_->server().round; }
  const RunConfig& config() const { return config_; }
  const data::Dataset& dataset() const { return dataset_; }
  const fedcore::Federation& federation() const { return *federation_; }
  fedcore::Federation& federation() { return *federation_; }
  const std::vector<MetricsRow>& metrics() const { return metrics_; }
  const std::vector<fedcore::RoundReport>& reports() const { return reports_; }

  // metrics.csv, costs.csv, timings.csv, summary.json, checkpoint.bin and
  // user_model.bin under `dir` (created if missing).
  void WriteOutputs(const std::string& dir) const;
  void WriteMetricsCsv(std::ostream& out) const;
  std::string SummaryJson() const;

 private:
  void RecordInitial();

  RunConfig config_;
  data::Dataset dataset_;
  std::unique_ptr<fedcore::Federation> federation_;
  netsim::FaultPlan faults_;
  std::vector<MetricsRow> metrics_;
  std::vector<fedcore::RoundReport> reports_;
};

// Runs `config` end to end and writes its outputs. On a failure after the
// federation exists, a checkpoint is written before rethrowing.
void RunExperiment(const RunConfig& config);

}  // namespace fedrec::cli

#endif  // FEDREC_CLI_EXPERIMENT_H_
