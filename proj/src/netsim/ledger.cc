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

#include "netsim/ledger.h"

namespace fedrec::netsim {

void CostLedger::Record(uint64_t round, PartyId party, Direction dir,
                        const std::string& phase, uint64_t bytes) {
  bytes_[{round, party, static_cast<int>(dir), phase}] += bytes;
}

void CostLedger::RecordDrop(DropRecord record) {
  drops_.push_back(std::move(record));
}

void CostLedger::AddCompute(uint64_t round, PartyId party, double seconds) {
  compute_[{round, party}] += seconds;
}

uint64_t CostLedger::Bytes(uint64_t round, PartyId party, Direction dir) const {
  uint64_t total = 0;
  auto it = bytes_.lower_bound({round, party, static_cast<int>(dir), ""});
  for (; it != bytes_.end(); ++it) {
    const auto& [r, p, d, phase] = it->first;
    if (r != round || p != party || d != static_cast<int>(dir)) break;
    total += it->second;
  }
  return total;
}

uint64_t CostLedger::PhaseBytes(uint64_t round, PartyId party, Direction dir,
                                const std::string& phase) const {
  auto it = bytes_.find({round, party, static_cast<int>(dir), phase});
  return it == bytes_.end() ? 0 : it->second;
}

uint64_t CostLedger::RoundTotal(uint64_t round, Direction dir) const {
  uint64_t total = 0;
  for (const auto& [key, bytes] : bytes_) {
    if (std::get<0>(key) == round && std::get<2>(key) == static_cast<int>(dir)) {
      total += bytes;
    }
  }
  return total;
}

uint64_t CostLedger::Total(Direction dir) const {
  uint64_t total = 0;
  for (const auto& [key, bytes] : bytes_) {
    if (std::get<2>(key) == static_cast<int>(dir)) total += bytes;
  }
  return total;
}

double CostLedger::Compute(uint64_t round, PartyId party) const {
  auto it = compute_.find({round, party});
  return it == compute_.end() ? 0.0 : it->second;
}

void CostLedger::WriteCsv(std::ostream& out,
                          const std::vector<std::string>& party_names) const {
  out << "round,party,direction,phase,bytes\n";
  for (const auto& [key, bytes] : bytes_) {
    const auto& [round, party, dir, phase] = key;
    out << round << ',' << party_names.at(party) << ','
        << (dir == static_cast<int>(Direction::kUp) ? "up" : "down") << ','
        << phase << ',' << bytes << '\n';
  }
}

void CostLedger::WriteComputeCsv(
    std::ostream& out, const std::vector<std::string>& party_names) const {
  out << "round,party,seconds\n";
  for (const auto& [key, seconds] : compute_) {
    out << key.first << ',' << party_names.at(key.second) << ',' << seconds
        << '\n';
  }
}

}  // namespace fedrec::netsim
