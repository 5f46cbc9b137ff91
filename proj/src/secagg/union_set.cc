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

#include "secagg/union_set.h"

#include <string>

#include "common/error.h"

namespace fedrec::secagg {

std::vector<uint64_t> EncodeUnion(std::span<const ItemIndex> local_items,
                                  size_t corpus_size, SecureRandom& rng) {
  std::vector<uint64_t> h(corpus_size, 0);
  for (ItemIndex j : local_items) {
    if (j >= corpus_size) {
      throw InputError("item " + std::to_string(j) + " outside corpus of " +
                       std::to_string(corpus_size));
    }
    uint64_t r;
    do {
      r = rng();
    } while (r == 0);
    h[j] = r;
  }
  return h;
}

std::vector<ItemIndex> DecodeUnion(std::span<const uint64_t> summed) {
  std::vector<ItemIndex> out;
  for (size_t j = 0; j < summed.size(); ++j) {
    if (summed[j] != 0) out.push_back(static_cast<ItemIndex>(j));
  }
  return out;
}

void AddModular(std::span<uint64_t> acc, std::span<const uint64_t> x) {
  if (acc.size() != x.size()) throw InputError("vector length mismatch");
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

}  // namespace fedrec::secagg
