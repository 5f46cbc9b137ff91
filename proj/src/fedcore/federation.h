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

#ifndef FEDREC_FEDCORE_FEDERATION_H_
#define FEDREC_FEDCORE_FEDERATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "data/corpus.h"
#include "fedcore/optimizer.h"
#include "netsim/bus.h"
#include "netsim/fault_plan.h"
#include "recmodel/gradients.h"
#include "recmodel/params.h"
#include "recmodel/repr_table.h"
#include "secagg/prg.h"

namespace fedrec::fedcore {

enum class TrainingMode {
  kEfficient,   // clients get the user model and union-set representations
  kWholeModel,  // clients get the user model and the full news encoder
};

struct FederationConfig {
  recmodel::ModelDims dims;
  OptimizerConfig optimizer;
  size_t group_size = 50;
  size_t negatives = 4;                // K
  bool secure_aggregation = true;
  uint32_t threshold = 0;              // 0 selects ceil(group_size / 2)
  uint32_t fractional_bits = 24;
  secagg::PrgKind prg = secagg::PrgKind::kMersenneTwister;
  TrainingMode mode = TrainingMode::kEfficient;
  double init_scale = 0.1;             // parameters start in U(-s, s)
  double dropout = 0.0;                // history dropout during training
  uint64_t seed = 1;

  uint32_t EffectiveThreshold() const;
  // Throws ConfigError on invalid settings.
  void Validate() const;
};

struct ServerState {
  recmodel::NewsEncoderParams encoder;
  recmodel::ReprTable news_table;
  recmodel::UserModelParams user_model;
  AdamMoments user_moments;
  AdamMoments encoder_moments;
  uint64_t round = 0;  // t, completed rounds
};

// A client's private data. Samples and local items never go on the wire.
struct ClientState {
  std::string user_id;
  netsim::PartyId party = 0;
  std::vector<recmodel::TrainingSample> samples;  // B_u
  std::vector<ItemIndex> local_items;             // N_u, sorted
};

struct RoundReport {
  uint64_t round = 0;
  std::vector<size_t> group;     // client indices
  bool applied = false;          // parameters were updated
  std::string skip_reason;
  size_t union_size = 0;
  size_t contributors = 0;       // clients whose upload was summed
  double weight_sum = 0.0;
  // Sample-weighted mean loss of the group before the update. Simulator
  // instrumentation; it is not sent over the bus.
  double train_loss = 0.0;
  double train_samples = 0.0;    // samples behind train_loss
  uint64_t bytes_up = 0;         // all parties
  uint64_t bytes_down = 0;
  double server_seconds = 0.0;
  double client_seconds = 0.0;   // mean over the group
};

// Owns the server, the simulated clients and the bus. One RunRound call
// executes one synchronous training round.
class Federation {
 public:
  static constexpr netsim::PartyId kServer = 0;

  // Builds per-client samples (seeded negative sampling), initializes the
  // models and encodes the full news table.
  Federation(const FederationConfig& config, const data::Dataset& dataset);

  RoundReport RunRound(const netsim::FaultPlan* faults = nullptr);

  const FederationConfig& config() const { return config_; }
  const ServerState& server() const { return server_; }
  ServerState& mutable_server() { return server_; }
  const std::vector<ClientState>& clients() const { return clients_; }
  const data::Corpus& corpus() const { return corpus_; }
  netsim::Bus& bus() { return bus_; }
  const netsim::Bus& bus() const { return bus_; }

  // Re-encodes every item with the current encoder.
  void RefreshNewsTable();

 private:
  RoundReport RunEfficient(RoundReport report, const netsim::FaultPlan* faults);
  RoundReport RunWholeModel(RoundReport report,
                            const netsim::FaultPlan* faults);

  FederationConfig config_;
  data::Corpus corpus_;
  ServerState server_;
  std::vector<ClientState> clients_;
  netsim::Bus bus_;
};

// Encodes every item of `corpus` with `encoder`.
recmodel::ReprTable EncodeCorpus(const recmodel::NewsEncoderParams& encoder,
                                 const data::Corpus& corpus);

}  // namespace fedrec::fedcore

#endif  // FEDREC_FEDCORE_FEDERATION_H_
