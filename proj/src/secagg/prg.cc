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

#include "secagg/prg.h"

#include <sodium.h>

#include <random>
#include <string>
#include <vector>

#include "common/byte_io.h"
#include "common/error.h"

namespace fedrec::secagg {
namespace {

std::mt19937_64 SeededTwister(const Bytes16& seed) {
  std::seed_seq seq{LoadU32(seed.data()), LoadU32(seed.data() + 4),
                    LoadU32(seed.data() + 8), LoadU32(seed.data() + 12)};
  return std::mt19937_64(seq);
}

template <typename Op>
void ForEachChaChaWord(const Bytes16& seed, size_t n, Op op) {
  // 32-byte stream key from the 16-byte seed.
  Bytes32 key;
  crypto_generichash(key.data(), key.size(), seed.data(), seed.size(),
                     nullptr, 0);
  static constexpr uint8_t kNonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  constexpr size_t kChunkWords = 512;
  std::vector<uint8_t> buf(kChunkWords * 8);
  uint32_t counter = 0;
  for (size_t at = 0; at < n; at += kChunkWords) {
    const size_t words = std::min(kChunkWords, n - at);
    std::fill(buf.begin(), buf.end(), 0);
    crypto_stream_chacha20_ietf_xor_ic(buf.data(), buf.data(), words * 8,
                                       kNonce, counter, key.data());
    counter += static_cast<uint32_t>((words * 8 + 63) / 64);
    for (size_t i = 0; i < words; ++i) op(at + i, LoadU64(buf.data() + 8 * i));
  }
}

}  // namespace

PrgKind ParsePrgKind(std::string_view name) {
  if (name == "mt19937" || name == "mersenne_twister") {
    return PrgKind::kMersenneTwister;
  }
  if (name == "chacha20") return PrgKind::kChaCha20;
  throw ConfigError("unknown PRG '" + std::string(name) +
                    "' (expected mt19937 or chacha20)");
}

std::string_view PrgKindName(PrgKind kind) {
  return kind == PrgKind::kMersenneTwister ? "mt19937" : "chacha20";
}

void ApplyMask(PrgKind kind, const Bytes16& seed, std::span<uint64_t> acc,
               bool subtract) {
  if (kind == PrgKind::kMersenneTwister) {
    auto gen = SeededTwister(seed);
    if (subtract) {
      for (auto& v : acc) v -= gen();
    } else {
      for (auto& v : acc) v += gen();
    }
    return;
  }
  if (subtract) {
    ForEachChaChaWord(seed, acc.size(), [&](size_t i, uint64_t w) { acc[i] -= w; });
  } else {
    ForEachChaChaWord(seed, acc.size(), [&](size_t i, uint64_t w) { acc[i] += w; });
  }
}

void ExpandSeed(PrgKind kind, const Bytes16& seed, std::span<uint64_t> out) {
  std::fill(out.begin(), out.end(), 0);
  ApplyMask(kind, seed, out, false);
}

}  // namespace fedrec::secagg
