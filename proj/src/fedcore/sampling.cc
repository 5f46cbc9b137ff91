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

#include "fedcore/sampling.h"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "common/error.h"
#include "common/random.h"

namespace fedrec::fedcore {

std::vector<size_t> SampleClientGroup(size_t population, size_t group_size,
                                      uint64_t seed) {
  if (group_size > population) {
    throw ConfigError("group size " + std::to_string(group_size) +
                      " exceeds population " + std::to_string(population));
  }
  Rng rng(seed);
  std::unordered_map<size_t, size_t> swapped;
  auto at = [&](size_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  std::vector<size_t> group;
  group.reserve(group_size);
  for (size_t j = 0; j < group_size; ++j) {
    const size_t pick = j + UniformIndex(rng, population - j);
    const size_t value = at(pick);
    swapped[pick] = at(j);
    group.push_back(value);
  }
  std::sort(group.begin(), group.end());
  return group;
}

}  // namespace fedrec::fedcore
