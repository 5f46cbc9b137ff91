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

#ifndef FEDREC_CLI_COMPARE_H_
#define FEDREC_CLI_COMPARE_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "cli/run_config.h"
#include "fedcore/federation.h"

namespace fedrec::cli {

// Costs of one (mode, encoder size) point, averaged over its rounds.
struct CompareRow {
  fedcore::TrainingMode mode = fedcore::TrainingMode::kEfficient;
  uint64_t factor = 1;
  size_t token_dim = 0;
  size_t encoder_params = 0;
  size_t user_params = 0;
  double mean_union_size = 0.0;
  double client_bytes_up = 0.0;     // mean per sampled client per round
  double client_bytes_down = 0.0;
  double server_bytes = 0.0;        // server up + down per round
  double client_seconds = 0.0;      // mean per sampled client per round
  double server_seconds = 0.0;      // per round
  // Up + down bytes of each sampled client, round by round, in group order.
  std::vector<uint64_t> client_bytes;
};

// Sweeps token_dim over config.compare_factors in both modes, running
// config.compare_rounds rounds per point on the same dataset.
std::vector<CompareRow> CompareModes(const RunConfig& config);

void WriteCompareCsv(std::ostream& out, const std::vector<CompareRow>& rows);

}  // namespace fedrec::cli

#endif  // FEDREC_CLI_COMPARE_H_
