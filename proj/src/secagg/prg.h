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

#ifndef FEDREC_SECAGG_PRG_H_
#define FEDREC_SECAGG_PRG_H_

#include <cstdint>
#include <span>
#include <string_view>

#include "secagg/crypto.h"

namespace fedrec::secagg {

// Mask expansion algorithm. Mersenne Twister is the reference choice; it is
// not cryptographically secure, so ChaCha20 is offered as a drop-in.
enum class PrgKind { kMersenneTwister, kChaCha20 };

PrgKind ParsePrgKind(std::string_view name);  // "mt19937" | "chacha20"
std::string_view PrgKindName(PrgKind kind);

// acc[i] += PRG(seed)[i] (mod 2^64), or -= when `subtract` is set.
void ApplyMask(PrgKind kind, const Bytes16& seed, std::span<uint64_t> acc,
               bool subtract);

// Fills out[i] = PRG(seed)[i].
void ExpandSeed(PrgKind kind, const Bytes16& seed, std::span<uint64_t> out);

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_PRG_H_
