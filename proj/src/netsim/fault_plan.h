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

#ifndef FEDREC_NETSIM_FAULT_PLAN_H_
#define FEDREC_NETSIM_FAULT_PLAN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

namespace fedrec::netsim {

// Points in a training round at which a client can drop out. A client that
// drops at a point sends nothing from that point on.
enum class DropPhase {
  kUnionAdvertise,
  kUnionShareKeys,
  kUnionMaskedInput,
  kUnionUnmask,
  kDistribute,
  kGradAdvertise,
  kGradShareKeys,
  kGradMaskedInput,
  kGradUnmask,
};

std::optional<DropPhase> ParseDropPhase(std::string_view name);
std::string_view DropPhaseName(DropPhase phase);

// Per-round drop schedule keyed by client index.
class FaultPlan {
 public:
  void Add(uint64_t round, uint32_t client, DropPhase phase) {
    plan_[round][client] = phase;
  }
  std::optional<DropPhase> Lookup(uint64_t round, uint32_t client) const {
    auto r = plan_.find(round);
    if (r == plan_.end()) return std::nullopt;
    auto c = r->second.find(client);
    if (c == r->second.end()) return std::nullopt;
    return c->second;
  }
  bool empty() const { return plan_.empty(); }

 private:
  std::map<uint64_t, std::map<uint32_t, DropPhase>> plan_;
};

inline std::optional<DropPhase> ParseDropPhase(std::string_view name) {
  if (name == "union_advertise") return DropPhase::kUnionAdvertise;
  if (name == "union_share_keys") return DropPhase::kUnionShareKeys;
  if (name == "union_masked_input") return DropPhase::kUnionMaskedInput;
  if (name == "union_unmask") return DropPhase::kUnionUnmask;
  if (name == "distribute") return DropPhase::kDistribute;
  if (name == "grad_advertise") return DropPhase::kGradAdvertise;
  if (name == "grad_share_keys") return DropPhase::kGradShareKeys;
  if (name == "grad_masked_input") return DropPhase::kGradMaskedInput;
  if (name == "grad_unmask") return DropPhase::kGradUnmask;
  return std::nullopt;
}

inline std::string_view DropPhaseName(DropPhase phase) {
  switch (phase) {
    case DropPhase::kUnionAdvertise: return "union_advertise";
    case DropPhase::kUnionShareKeys: return "union_share_keys";
    case DropPhase::kUnionMaskedInput: return "union_masked_input";
    case DropPhase::kUnionUnmask: return "union_unmask";
    case DropPhase::kDistribute: return "distribute";
    case DropPhase::kGradAdvertise: return "grad_advertise";
    case DropPhase::kGradShareKeys: return "grad_share_keys";
    case DropPhase::kGradMaskedInput: return "grad_masked_input";
    case DropPhase::kGradUnmask: return "grad_unmask";
  }
  return "unknown";
}

}  // namespace fedrec::netsim

#endif  // FEDREC_NETSIM_FAULT_PLAN_H_
