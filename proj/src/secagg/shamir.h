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

#ifndef FEDREC_SECAGG_SHAMIR_H_
#define FEDREC_SECAGG_SHAMIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "secagg/crypto.h"
#include "secagg/gf128.h"

namespace fedrec::secagg {

// One Shamir share of a byte string. The secret is split into 16-byte
// blocks (zero padded); each block is an independent polynomial over
// GF(2^128) and `y` holds the evaluations at `x`, 16 bytes per block.
struct ShamirShare {
  uint32_t x = 0;  // nonzero evaluation point
  std::vector<uint8_t> y;
};

// Splits `secret` into one share per entry of `xs` (distinct, nonzero).
// Any `threshold` shares reconstruct it.
std::vector<ShamirShare> ShamirSplit(std::span<const uint8_t> secret,
                                     uint32_t threshold,
                                     std::span<const uint32_t> xs,
                                     SecureRandom& rng);

// Shares at x = 1..n.
std::vector<ShamirShare> MakeShares(std::span<const uint8_t> secret,
                                    uint32_t threshold, uint32_t n,
                                    SecureRandom& rng);

// Lagrange coefficients at 0 for the given evaluation points.
std::vector<Gf128> LagrangeAtZero(std::span<const uint32_t> xs);

// Recovers the secret from the first `threshold` shares. Throws
// ProtocolError with fewer shares, duplicate points or ragged payloads.
std::vector<uint8_t> Reconstruct(std::span<const ShamirShare> shares,
                                 uint32_t threshold, size_t secret_len);

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_SHAMIR_H_
