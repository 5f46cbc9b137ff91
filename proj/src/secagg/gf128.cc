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

#include "secagg/gf128.h"

#include "common/error.h"

namespace fedrec::secagg {

Gf128 GfMul(Gf128 a, Gf128 b) {
  constexpr Gf128 kReduce = 0x87;  // x^7 + x^2 + x + 1
  constexpr int kTop = 127;
  Gf128 r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    const bool carry = (a >> kTop) & 1;
    a <<= 1;
    if (carry) a ^= kReduce;
  }
  return r;
}

Gf128 GfInv(Gf128 a) {
  if (a == 0) throw Error(ErrorCode::kInternal, "inverse of zero in GF(2^128)");
  // a^(2^128 - 2) = prod_{i=1}^{127} a^(2^i)
  Gf128 result = 1;
  Gf128 square = GfMul(a, a);
  for (int i = 1; i < 128; ++i) {
    result = GfMul(result, square);
    square = GfMul(square, square);
  }
  return result;
}

Gf128 GfLoad(std::span<const uint8_t, 16> bytes) {
  Gf128 v = 0;
  for (int i = 15; i >= 0; --i) v = (v << 8) | bytes[static_cast<size_t>(i)];
  return v;
}

void GfStore(Gf128 v, std::span<uint8_t, 16> out) {
  for (size_t i = 0; i < 16; ++i) {
    out[i] = static_cast<uint8_t>(v);
    v >>= 8;
  }
}

}  // namespace fedrec::secagg
