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

#ifndef FEDREC_SECAGG_UNION_SET_H_
#define FEDREC_SECAGG_UNION_SET_H_

#include <cstdint>
#include <span>
#include <vector>

#include "common/types.h"
#include "secagg/crypto.h"

namespace fedrec::secagg {

// Indicator encoding of a local item set over the whole corpus: entry j is a
// uniformly random nonzero residue mod 2^64 when item j is in the set and
// 0 otherwise. The modular sum of indicators is nonzero exactly on the
// union, except with probability ~2^-64 per overlapping item.
std::vector<uint64_t> EncodeUnion(std::span<const ItemIndex> local_items,
                                  size_t corpus_size, SecureRandom& rng);

std::vector<ItemIndex> DecodeUnion(std::span<const uint64_t> summed);

// Element-wise sum mod 2^64 into `acc`.
void AddModular(std::span<uint64_t> acc, std::span<const uint64_t> x);

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_UNION_SET_H_
