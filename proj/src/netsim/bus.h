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

#ifndef FEDREC_NETSIM_BUS_H_
#define FEDREC_NETSIM_BUS_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "netsim/ledger.h"
#include "netsim/message.h"

namespace fedrec::netsim {

struct DeliveryReceipt {
  bool delivered = false;
  uint64_t bytes = 0;     // framed size
  uint64_t sequence = 0;  // global send order
};

// In-process transport. Messages are framed on send, so the ledger counts
// exactly the bytes a real wire would carry. Each party has one FIFO inbox.
// Dropped parties neither send nor receive until the next round begins.
class Bus {
 public:
  PartyId AddParty(std::string name);
  size_t party_count() const { return names_.size(); }
  const std::string& PartyName(PartyId id) const;
  const std::vector<std::string>& party_names() const { return names_; }

  // Starts a round: clears inboxes, revives dropped parties.
  void BeginRound(uint64_t round);
  uint64_t round() const { return round_; }
  void SetPhase(std::string phase) { phase_ = std::move(phase); }
  const std::string& phase() const { return phase_; }

  void Drop(PartyId party);
  bool IsDropped(PartyId party) const;

  DeliveryReceipt Send(PartyId from, PartyId to, MessageTag tag,
                       const std::vector<uint8_t>& payload);
  std::optional<Delivery> Receive(PartyId party);
  bool HasPending(PartyId party) const;

  CostLedger& ledger() { return ledger_; }
  const CostLedger& ledger() const { return ledger_; }

 private:
  void CheckParty(PartyId id) const;

  std::vector<std::string> names_;
  std::vector<std::deque<std::vector<uint8_t>>> inboxes_;
  std::vector<bool> dropped_;
  CostLedger ledger_;
  uint64_t round_ = 0;
  uint64_t sequence_ = 0;
  std::string phase_ = "setup";
};

}  // namespace fedrec::netsim

#endif  // FEDREC_NETSIM_BUS_H_
