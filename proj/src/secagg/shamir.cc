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

#include "secagg/shamir.h"

#include <algorithm>
#include <set>
#include <string>

#include "common/error.h"

namespace fedrec::secagg {
namespace {

constexpr size_t kBlock = 16;

size_t BlockCount(size_t len) { return (len + kBlock - 1) / kBlock; }

}  // namespace

std::vector<ShamirShare> ShamirSplit(std::span<const uint8_t> secret,
                                     uint32_t threshold,
                                     std::span<const uint32_t> xs,
                                     SecureRandom& rng) {
  if (threshold == 0 || threshold > xs.size()) {
    throw InputError("Shamir threshold " + std::to_string(threshold) +
                     " invalid for " + std::to_string(xs.size()) + " shares");
  }
  std::set<uint32_t> seen;
  for (uint32_t x : xs) {
    if (x == 0 || !seen.insert(x).second) {
      throw InputError("Shamir evaluation points must be distinct and nonzero");
    }
  }
  const size_t blocks = std::max<size_t>(1, BlockCount(secret.size()));
  std::vector<ShamirShare> shares(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    shares[i].x = xs[i];
    shares[i].y.resize(blocks * kBlock);
  }
  std::vector<Gf128> coeffs(threshold);
  for (size_t b = 0; b < blocks; ++b) {
    std::array<uint8_t, kBlock> block{};
    const size_t start = b * kBlock;
    if (start < secret.size()) {
      std::copy_n(secret.data() + start,
                  std::min(kBlock, secret.size() - start), block.data());
    }
    coeffs[0] = GfLoad(block);
    for (uint32_t k = 1; k < threshold; ++k) {
      std::array<uint8_t, kBlock> r;
      rng.Fill(r);
      coeffs[k] = GfLoad(r);
    }
    for (auto& share : shares) {
      // Horner evaluation.
      const Gf128 x = GfFromU64(share.x);
      Gf128 acc = 0;
      for (uint32_t k = threshold; k-- > 0;) acc = GfMul(acc, x) ^ coeffs[k];
      GfStore(acc, std::span<uint8_t, kBlock>(share.y.data() + start, kBlock));
    }
  }
  return shares;
}

std::vector<ShamirShare> MakeShares(std::span<const uint8_t> secret,
                                    uint32_t threshold, uint32_t n,
                                    SecureRandom& rng) {
  std::vector<uint32_t> xs(n);
  for (uint32_t i = 0; i < n; ++i) xs[i] = i + 1;
  return ShamirSplit(secret, threshold, xs, rng);
}

std::vector<Gf128> LagrangeAtZero(std::span<const uint32_t> xs) {
  const size_t n = xs.size();
  std::vector<Gf128> num(n, 1), den(n, 1);
  for (size_t i = 0; i < n; ++i) {
    const Gf128 xi = GfFromU64(xs[i]);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Gf128 xj = GfFromU64(xs[j]);
      // (0 - xj) / (xi - xj) in characteristic 2.
      num[i] = GfMul(num[i], xj);
      den[i] = GfMul(den[i], xi ^ xj);
    }
  }
  // Batch inversion: one field inversion for all denominators.
  std::vector<Gf128> prefix(n + 1, 1);
  for (size_t i = 0; i < n; ++i) prefix[i + 1] = GfMul(prefix[i], den[i]);
  Gf128 inv = GfInv(prefix[n]);
  std::vector<Gf128> out(n);
  for (size_t i = n; i-- > 0;) {
    out[i] = GfMul(num[i], GfMul(inv, prefix[i]));
    inv = GfMul(inv, den[i]);
  }
  return out;
}

std::vector<uint8_t> Reconstruct(std::span<const ShamirShare> shares,
                                 uint32_t threshold, size_t secret_len) {
  if (threshold == 0 || shares.size() < threshold) {
    throw ProtocolError("need " + std::to_string(threshold) +
                        " shares to reconstruct, have " +
                        std::to_string(shares.size()));
  }
  const auto used = shares.subspan(0, threshold);
  std::vector<uint32_t> xs;
  std::set<uint32_t> seen;
  const size_t payload = used[0].y.size();
  for (const auto& s : used) {
    if (s.x == 0 || !seen.insert(s.x).second) {
      throw ProtocolError("duplicate or zero share point");
    }
    if (s.y.size() != payload || payload % kBlock != 0) {
      throw ProtocolError("inconsistent share payload sizes");
    }
    xs.push_back(s.x);
  }
  if (BlockCount(secret_len) * kBlock > payload) {
    throw ProtocolError("shares too short for requested secret length");
  }
  const auto lambda = LagrangeAtZero(xs);
  std::vector<uint8_t> out(payload);
  for (size_t start = 0; start < payload; start += kBlock) {
    Gf128 acc = 0;
    for (size_t i = 0; i < used.size(); ++i) {
      acc ^= GfMul(lambda[i],
                   GfLoad(std::span<const uint8_t, kBlock>(
                       used[i].y.data() + start, kBlock)));
    }
    GfStore(acc, std::span<uint8_t, kBlock>(out.data() + start, kBlock));
  }
  out.resize(secret_len);
  return out;
}

}  // namespace fedrec::secagg
