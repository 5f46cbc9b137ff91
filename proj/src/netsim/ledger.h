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

#ifndef FEDREC_NETSIM_LEDGER_H_
#define FEDREC_NETSIM_LEDGER_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "netsim/message.h"

namespace fedrec::netsim {

enum class Direction { kUp, kDown };  // up = sent by the party

// Byte and compute accounting. Counters are keyed by round so they are
// additive within a round and independent across rounds.
class CostLedger {
 public:
  struct DropRecord {
    uint64_t round;
    PartyId from;
    PartyId to;
    std::string phase;
    uint64_t bytes;
  };

  void Record(uint64_t round, PartyId party, Direction dir,
              const std::string& phase, uint64_t bytes);
  void RecordDrop(DropRecord record);
  void AddCompute(uint64_t round, PartyId party, double seconds);

  uint64_t Bytes(uint64_t round, PartyId party, Direction dir) const;
  uint64_t PhaseBytes(uint64_t round, PartyId party, Direction dir,
                      const std::string& phase) const;
  uint64_t RoundTotal(uint64_t round, Direction dir) const;
  uint64_t Total(Direction dir) const;
  double Compute(uint64_t round, PartyId party) const;

  const std::vector<DropRecord>& drops() const { return drops_; }

  // CSV columns: round,party,direction,phase,bytes. Rows are ordered by
  // round, party id, direction, phase.
  void WriteCsv(std::ostream& out,
                const std::vector<std::string>& party_names) const;
  // CSV columns: round,party,seconds.
  void WriteComputeCsv(std::ostream& out,
                       const std::vector<std::string>& party_names) const;

 private:
  using Key = std::tuple<uint64_t, PartyId, int, std::string>;
  std::map<Key, uint64_t> bytes_;
  std::map<std::pair<uint64_t, PartyId>, double> compute_;
  std::vector<DropRecord> drops_;
};

}  // namespace fedrec::netsim

#endif  // FEDREC_NETSIM_LEDGER_H_
