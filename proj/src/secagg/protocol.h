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

#ifndef FEDREC_SECAGG_PROTOCOL_H_
#define FEDREC_SECAGG_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "secagg/crypto.h"
#include "secagg/prg.h"
#include "secagg/shamir.h"

namespace fedrec::secagg {

// Participants are identified by their index within the session, 0..n-1.
// Shamir evaluation points are index + 1.
struct SessionParams {
  uint32_t num_participants = 0;
  uint32_t threshold = 0;
  uint32_t vector_length = 0;
  PrgKind prg = PrgKind::kMersenneTwister;
  uint64_t session_id = 0;

  void Validate() const;
};

// Wire records. Each encodes to a little-endian payload.
struct KeyAdvert {
  uint32_t owner = 0;
  Bytes32 sign_pk{};
  Bytes32 s_pk{};
  Bytes32 c_pk{};
  SignatureBytes signature{};
};

struct EncryptedShare {
  uint32_t owner = 0;
  uint32_t holder = 0;
  std::vector<uint8_t> ciphertext;
};

enum class ShareKind : uint8_t { kSelfMask = 0, kSecretKey = 1 };

struct ShareRequestEntry {
  uint32_t target = 0;
  ShareKind kind = ShareKind::kSelfMask;
};

struct ShareResponseEntry {
  uint32_t target = 0;
  ShareKind kind = ShareKind::kSelfMask;
  ShamirShare share;
};

std::vector<uint8_t> AdvertSignedMessage(uint64_t session_id,
                                         const KeyAdvert& advert);
bool VerifyAdvert(uint64_t session_id, const KeyAdvert& advert);

std::vector<uint8_t> EncodeKeyAdvert(const KeyAdvert& advert);
KeyAdvert DecodeKeyAdvert(std::span<const uint8_t> payload);
std::vector<uint8_t> EncodeAdvertList(const std::vector<KeyAdvert>& adverts);
std::vector<KeyAdvert> DecodeAdvertList(std::span<const uint8_t> payload);
// ShareBatch (client to server) and ShareBundle (server to client) share
// one encoding: a list of encrypted shares.
std::vector<uint8_t> EncodeShareList(const std::vector<EncryptedShare>& shares);
std::vector<EncryptedShare> DecodeShareList(std::span<const uint8_t> payload);
std::vector<uint8_t> EncodeMaskedInput(uint32_t owner,
                                       std::span<const uint64_t> masked);
std::pair<uint32_t, std::vector<uint64_t>> DecodeMaskedInput(
    std::span<const uint8_t> payload);
std::vector<uint8_t> EncodeShareRequest(
    const std::vector<ShareRequestEntry>& entries);
std::vector<ShareRequestEntry> DecodeShareRequest(
    std::span<const uint8_t> payload);
std::vector<uint8_t> EncodeShareResponse(
    uint32_t holder, const std::vector<ShareResponseEntry>& entries);
std::pair<uint32_t, std::vector<ShareResponseEntry>> DecodeShareResponse(
    std::span<const uint8_t> payload);

// Client side of one session. Each step consumes the server's previous
// message and returns the payload to upload. Any violation throws
// ProtocolError and the client stops participating.
class SecAggClient {
 public:
  SecAggClient(uint32_t index, const SessionParams& params,
               std::vector<uint64_t> input, SecureRandom rng);

  uint32_t index() const { return index_; }

  std::vector<uint8_t> Advertise();
  std::vector<uint8_t> ShareKeys(std::span<const uint8_t> advert_list);
  std::vector<uint8_t> MaskInput(std::span<const uint8_t> share_bundle);
  std::vector<uint8_t> Unmask(std::span<const uint8_t> share_request);

  // Exposed for tests.
  const std::vector<uint64_t>& masked_input() const { return masked_; }

 private:
  struct HeldShare {
    ShamirShare self_mask;
    ShamirShare secret_key;
  };

  uint32_t index_;
  SessionParams params_;
  std::vector<uint64_t> input_;
  SecureRandom rng_;
  SigningKeyPair sign_keys_;
  AgreementKeyPair s_keys_;
  AgreementKeyPair c_keys_;
  Bytes16 self_seed_{};
  std::map<uint32_t, KeyAdvert> peers_;     // U1 view, including self
  std::map<uint32_t, HeldShare> held_;      // U2 view, including self
  std::map<uint32_t, Bytes32> share_keys_;  // AEAD key per peer
  std::vector<uint64_t> masked_;
  enum class Stage { kInit, kAdvertised, kShared, kMasked, kDone } stage_ =
      Stage::kInit;
};

// Server side of one session.
class SecAggServer {
 public:
  explicit SecAggServer(const SessionParams& params);

  // Invalid or duplicate adverts are rejected and return false.
  bool OnAdvert(std::span<const uint8_t> payload);
  std::vector<uint8_t> AdvertList() const;
  const std::set<uint32_t>& advertised() const { return u1_; }

  bool OnShareBatch(uint32_t sender, std::span<const uint8_t> payload);
  // One bundle per member of U2, holding the shares addressed to it.
  std::map<uint32_t, std::vector<uint8_t>> Bundles() const;
  const std::set<uint32_t>& shared() const { return u2_; }

  bool OnMaskedInput(uint32_t sender, std::span<const uint8_t> payload);
  const std::set<uint32_t>& masked() const { return u3_; }
  // Self-mask shares for U3, secret-key shares for U2 \ U3.
  std::vector<ShareRequestEntry> ShareRequestEntries() const;

  bool OnShareResponse(uint32_t sender, std::span<const uint8_t> payload);
  const std::set<uint32_t>& responded() const { return u5_; }

  // Reconstructs the unmasked sum over U3. Throws ProtocolError when a
  // secret cannot be recovered or fails its public-key check.
  std::vector<uint64_t> Finish();

 private:
  SessionParams params_;
  std::map<uint32_t, KeyAdvert> adverts_;
  std::set<uint32_t> u1_, u2_, u3_, u5_;
  std::map<uint32_t, std::vector<EncryptedShare>> outbox_;  // by holder
  std::vector<uint64_t> sum_;
  std::map<uint32_t, std::vector<ShamirShare>> self_mask_shares_;
  std::map<uint32_t, std::vector<ShamirShare>> secret_key_shares_;
};

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_PROTOCOL_H_
