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

#include "secagg/crypto.h"

#include <openssl/evp.h>
#include <sodium.h>

#include <cstring>
#include <mutex>

#include "common/byte_io.h"
#include "common/error.h"

namespace fedrec::secagg {
namespace {

void EnsureSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error(ErrorCode::kInternal, "sodium_init failed");
  });
}

}  // namespace

SecureRandom::SecureRandom(const Bytes32& seed) : key_(seed) { EnsureSodium(); }

SecureRandom SecureRandom::FromOs() {
  EnsureSodium();
  Bytes32 seed;
  randombytes_buf(seed.data(), seed.size());
  return SecureRandom(seed);
}

SecureRandom SecureRandom::FromTags(std::span<const uint64_t> tags) {
  EnsureSodium();
  std::vector<uint8_t> msg(8 * tags.size());
  for (size_t i = 0; i < tags.size(); ++i) StoreU64(msg.data() + 8 * i, tags[i]);
  static constexpr char kDomain[] = "fedrec/secure-random";
  Bytes32 seed;
  crypto_generichash(seed.data(), seed.size(), msg.data(), msg.size(),
                     reinterpret_cast<const uint8_t*>(kDomain),
                     sizeof(kDomain) - 1);
  return SecureRandom(seed);
}

void SecureRandom::Refill() {
  static constexpr uint8_t kNonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  // 256 bytes = 4 ChaCha20 blocks.
  std::memset(buffer_.data(), 0, buffer_.size());
  crypto_stream_chacha20_ietf_xor_ic(buffer_.data(), buffer_.data(),
                                     buffer_.size(), kNonce, counter_,
                                     key_.data());
  counter_ += 4;
  used_ = 0;
}

void SecureRandom::Fill(std::span<uint8_t> out) {
  size_t at = 0;
  while (at < out.size()) {
    if (used_ == buffer_.size()) Refill();
    size_t n = std::min(out.size() - at, buffer_.size() - used_);
    std::memcpy(out.data() + at, buffer_.data() + used_, n);
    used_ += n;
    at += n;
  }
}

uint64_t SecureRandom::operator()() {
  uint8_t b[8];
  Fill(b);
  return LoadU64(b);
}

SigningKeyPair SigningKeyPair::Generate(SecureRandom& rng) {
  EnsureSodium();
  SigningKeyPair kp;
  uint8_t seed[crypto_sign_SEEDBYTES];
  rng.Fill(seed);
  crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed);
  sodium_memzero(seed, sizeof(seed));
  return kp;
}

AgreementKeyPair AgreementKeyPair::Generate(SecureRandom& rng) {
  AgreementKeyPair kp;
  rng.Fill(kp.secret_key);
  kp.public_key = AgreementPublicKey(kp.secret_key);
  return kp;
}

SignatureBytes Sign(const SigningKeyPair& keys, std::span<const uint8_t> msg) {
  SignatureBytes sig;
  crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(),
                       keys.secret_key.data());
  return sig;
}

bool Verify(const Bytes32& public_key, std::span<const uint8_t> msg,
            const SignatureBytes& signature) {
  EnsureSodium();
  return crypto_sign_verify_detached(signature.data(), msg.data(), msg.size(),
                                     public_key.data()) == 0;
}

Bytes32 AgreementPublicKey(const Bytes32& secret_key) {
  EnsureSodium();
  Bytes32 pk;
  crypto_scalarmult_base(pk.data(), secret_key.data());
  return pk;
}

std::optional<Bytes32> Agree(const Bytes32& secret_key,
                             const Bytes32& peer_public_key) {
  EnsureSodium();
  Bytes32 shared;
  if (crypto_scalarmult(shared.data(), secret_key.data(),
                        peer_public_key.data()) != 0) {
    return std::nullopt;
  }
  return shared;
}

Bytes16 Md5(std::span<const uint8_t> data) {
  Bytes16 out;
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_md5(),
                 nullptr) != 1 ||
      len != out.size()) {
    throw Error(ErrorCode::kInternal, "MD5 digest failed");
  }
  return out;
}

Bytes16 PairwiseSeed(const Bytes32& shared_secret) { return Md5(shared_secret); }

Bytes32 ShareEncryptionKey(const Bytes32& shared_secret) {
  static constexpr char kDomain[] = "fedrec/share-key";
  Bytes32 key;
  crypto_generichash(key.data(), key.size(), shared_secret.data(),
                     shared_secret.size(),
                     reinterpret_cast<const uint8_t*>(kDomain),
                     sizeof(kDomain) - 1);
  return key;
}

std::vector<uint8_t> AeadSeal(const Bytes32& key,
                              std::span<const uint8_t, 12> nonce,
                              std::span<const uint8_t> associated_data,
                              std::span<const uint8_t> plaintext) {
  EnsureSodium();
  std::vector<uint8_t> out(plaintext.size() + kAeadOverhead);
  unsigned long long out_len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(
      out.data(), &out_len, plaintext.data(), plaintext.size(),
      associated_data.data(), associated_data.size(), nullptr, nonce.data(),
      key.data());
  out.resize(out_len);
  return out;
}

std::optional<std::vector<uint8_t>> AeadOpen(
    const Bytes32& key, std::span<const uint8_t, 12> nonce,
    std::span<const uint8_t> associated_data,
    std::span<const uint8_t> ciphertext) {
  EnsureSodium();
  if (ciphertext.size() < kAeadOverhead) return std::nullopt;
  std::vector<uint8_t> out(ciphertext.size() - kAeadOverhead);
  unsigned long long out_len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(
          out.data(), &out_len, nullptr, ciphertext.data(), ciphertext.size(),
          associated_data.data(), associated_data.size(), nonce.data(),
          key.data()) != 0) {
    return std::nullopt;
  }
  out.resize(out_len);
  return out;
}

}  // namespace fedrec::secagg
