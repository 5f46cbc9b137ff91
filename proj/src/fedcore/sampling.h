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

#ifndef FEDREC_FEDCORE_SAMPLING_H_
#define FEDREC_FEDCORE_SAMPLING_H_

#include <cstdint>
#include <vector>

namespace fedrec::fedcore {

// Uniform sample of `group_size` distinct indices from [0, population),
// returned sorted. The draw is a partial Fisher-Yates shuffle, so for a fixed
// seed the group of size S is contained in the group of any larger size.
// Throws ConfigError when group_size > population.
std::vector<size_t> SampleClientGroup(size_t population, size_t group_size,
                                      uint64_t seed);

}  // namespace fedrec::fedcore

#endif  // FEDREC_FEDCORE_SAMPLING_H_
