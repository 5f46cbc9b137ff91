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

#ifndef FEDREC_COMMON_RANDOM_H_
#define FEDREC_COMMON_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fedrec {

// Simulation randomness. Protocol secrets use secagg::SecureRandom instead.
using Rng = std::mt19937_64;

uint64_t SplitMix64(uint64_t x);

// Derives an independent seed from a base seed and a list of tags
// (round, client, purpose...). Stable across platforms.
uint64_t DeriveSeed(uint64_t base, std::initializer_list<uint64_t> tags);

// The helpers below avoid std::*_distribution so results do not depend on
// the standard library implementation.

// Uniform integer in [0, n). n must be > 0.
uint64_t UniformIndex(Rng& rng, uint64_t n);
// Uniform double in [0, 1).
double UniformUnit(Rng& rng);
double UniformReal(Rng& rng, double lo, double hi);
double StandardNormal(Rng& rng);

}  // namespace fedrec

#endif  // FEDREC_COMMON_RANDOM_H_
