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

#ifndef FEDREC_SECAGG_SESSION_H_
#define FEDREC_SECAGG_SESSION_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netsim/bus.h"
#include "secagg/prg.h"

namespace fedrec::secagg {

// The step before which a participant goes silent.
enum class DropPoint {
  kNone,
  kAdvertise,    // never advertises keys
  kShareKeys,    // advertises, never sends shares
  kMaskedInput,  // shares keys, never sends its masked input
  kUnmask,       // sends its masked input, never answers the share request
};

struct SessionParticipant {
  netsim::PartyId party = 0;
  std::vector<uint64_t> input;
  DropPoint drop = DropPoint::kNone;
};

// Test hook: may rewrite any payload before it is sent. `from` is the
// sending party.
using TamperHook = std::function<void(netsim::MessageTag tag,
                                      netsim::PartyId from,
                                      std::vector<uint8_t>& payload)>;

struct SessionOptions {
  uint32_t threshold = 0;
  PrgKind prg = PrgKind::kMersenneTwister;
  uint64_t session_id = 0;
  uint64_t seed = 0;                 // drives all protocol randomness
  std::string phase_prefix = "secagg";
  TamperHook tamper;
};

struct SessionResult {
  bool completed = false;
  std::string abort_reason;
  std::vector<uint64_t> sum;        // empty unless completed
  std::vector<uint32_t> included;   // participant indices whose input is summed
};

// Runs one secure-aggregation session over the bus. Participant i has
// session index i. Phase names are "<prefix>.advertise", ".share_keys",
// ".masked_input" and ".unmask". Compute time of each party is added to
// the bus ledger.
SessionResult RunSession(netsim::Bus& bus, netsim::PartyId server,
                         const std::vector<SessionParticipant>& participants,
                         const SessionOptions& options);

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_SESSION_H_
