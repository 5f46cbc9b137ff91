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

#ifndef FEDREC_SECAGG_CRYPTO_H_
#define FEDREC_SECAGG_CRYPTO_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fedrec::secagg {

using Bytes16 = std::array<uint8_t, 16>;
using Bytes32 = std::array<uint8_t, 32>;
using SignatureBytes = std::array<uint8_t, 64>;

// ChaCha20 keystream generator. Seeded explicitly for reproducible
// simulations or from the OS for real use. Satisfies
// UniformRandomBitGenerator.
class SecureRandom {
 public:
  using result_type = uint64_t;

  explicit SecureRandom(const Bytes32& seed);
  static SecureRandom FromOs();
  // Domain-separated deterministic seed from integer tags.
  static SecureRandom FromTags(std::span<const uint64_t> tags);

  void Fill(std::span<uint8_t> out);
  uint64_t operator()();
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return UINT64_MAX; }

 private:
  void Refill();

  Bytes32 key_;
  uint32_t counter_ = 0;
  std::array<uint8_t, 256> buffer_{};
  size_t used_ = 256;
};

// ed25519 signing keys.
struct SigningKeyPair {
  Bytes32 public_key{};
  std::array<uint8_t, 64> secret_key{};
  static SigningKeyPair Generate(SecureRandom& rng);
};

// x25519 key-agreement keys.
struct AgreementKeyPair {
  Bytes32 public_key{};
  Bytes32 secret_key{};
  static AgreementKeyPair Generate(SecureRandom& rng);
};

SignatureBytes Sign(const SigningKeyPair& keys, std::span<const uint8_t> msg);
bool Verify(const Bytes32& public_key, std::span<const uint8_t> msg,
            const SignatureBytes& signature);

Bytes32 AgreementPublicKey(const Bytes32& secret_key);
// Raw x25519 shared secret; nullopt for degenerate peer keys.
std::optional<Bytes32> Agree(const Bytes32& secret_key,
                             const Bytes32& peer_public_key);

Bytes16 Md5(std::span<const uint8_t> data);
// Pairwise mask seed: MD5 of the raw shared secret.
Bytes16 PairwiseSeed(const Bytes32& shared_secret);
// Symmetric key for share encryption: BLAKE2b-256 of the shared secret.
Bytes32 ShareEncryptionKey(const Bytes32& shared_secret);

// ChaCha20-Poly1305 (IETF). Nonces must never repeat under one key.
std::vector<uint8_t> AeadSeal(const Bytes32& key,
                              std::span<const uint8_t, 12> nonce,
                              std::span<const uint8_t> associated_data,
                              std::span<const uint8_t> plaintext);
std::optional<std::vector<uint8_t>> AeadOpen(
    const Bytes32& key, std::span<const uint8_t, 12> nonce,
    std::span<const uint8_t> associated_data,
    std::span<const uint8_t> ciphertext);

inline constexpr size_t kAeadOverhead = 16;

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_CRYPTO_H_
