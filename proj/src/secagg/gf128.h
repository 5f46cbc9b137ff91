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

#ifndef FEDREC_SECAGG_GF128_H_
#define FEDREC_SECAGG_GF128_H_

#include <cstdint>
#include <span>

namespace fedrec::secagg {

// Element of GF(2^128) = GF(2)[x] / (x^128 + x^7 + x^2 + x + 1).
// Bit i holds the coefficient of x^i. Addition is XOR.
using Gf128 = unsigned __int128;

Gf128 GfMul(Gf128 a, Gf128 b);
// Multiplicative inverse; a must be nonzero.
Gf128 GfInv(Gf128 a);

// 16 little-endian bytes <-> field element.
Gf128 GfLoad(std::span<const uint8_t, 16> bytes);
void GfStore(Gf128 v, std::span<uint8_t, 16> out);

inline Gf128 GfFromU64(uint64_t v) { return static_cast<Gf128>(v); }

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_GF128_H_
