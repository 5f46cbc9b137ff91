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

#include "secagg/protocol.h"

#include <algorithm>
#include <array>
#include <string>

#include "common/byte_io.h"
#include "common/error.h"

namespace fedrec::secagg {
namespace {

constexpr char kAdvertDomain[] = "fedrec/secagg/advert/v1";
constexpr size_t kSelfSeedBytes = 16;
constexpr size_t kSecretKeyBytes = 32;

template <size_t N>
std::array<uint8_t, N> ReadArray(ByteReader& r) {
  std::array<uint8_t, N> out;
  auto bytes = r.Bytes(N);
  std::copy(bytes.begin(), bytes.end(), out.begin());
  return out;
}

std::array<uint8_t, 12> ShareNonce(uint32_t owner, uint32_t holder) {
  std::array<uint8_t, 12> nonce{};
  StoreU32(nonce.data(), owner);
  StoreU32(nonce.data() + 4, holder);
  return nonce;
}

std::array<uint8_t, 8> SessionAd(uint64_t session_id) {
  std::array<uint8_t, 8> ad;
  StoreU64(ad.data(), session_id);
  return ad;
}

Bytes32 SharedKey(const Bytes32& secret_key, const Bytes32& peer_pk) {
  auto shared = Agree(secret_key, peer_pk);
  if (!shared) throw ProtocolError("key agreement with a degenerate key");
  return *shared;
}

void WriteShare(ByteWriter& w, const ShamirShare& share) {
  w.U32(share.x);
  w.U32(static_cast<uint32_t>(share.y.size()));
  w.Bytes(share.y);
}

ShamirShare ReadShare(ByteReader& r) {
  ShamirShare share;
  share.x = r.U32();
  const uint32_t len = r.U32();
  auto y = r.Bytes(len);
  share.y.assign(y.begin(), y.end());
  return share;
}

ShareKind ReadKind(ByteReader& r) {
  const uint8_t k = r.U8();
  if (k > 1) throw ProtocolError("unknown share kind");
  return static_cast<ShareKind>(k);
}

}  // namespace

void SessionParams::Validate() const {
  if (num_participants == 0) throw InputError("session has no participants");
  if (threshold == 0 || threshold > num_participants) {
    throw InputError("threshold must lie in [1, n]");
  }
}

std::vector<uint8_t> AdvertSignedMessage(uint64_t session_id,
                                         const KeyAdvert& advert) {
  ByteWriter w;
  w.Bytes(std::span(reinterpret_cast<const uint8_t*>(kAdvertDomain),
                    sizeof(kAdvertDomain) - 1));
  w.U64(session_id);
  w.U32(advert.owner);
  w.Bytes(advert.s_pk);
  w.Bytes(advert.c_pk);
  return w.Take();
}

bool VerifyAdvert(uint64_t session_id, const KeyAdvert& advert) {
  return Verify(advert.sign_pk, AdvertSignedMessage(session_id, advert),
                advert.signature);
}

std::vector<uint8_t> EncodeKeyAdvert(const KeyAdvert& advert) {
  ByteWriter w;
  w.U32(advert.owner);
  w.Bytes(advert.sign_pk);
  w.Bytes(advert.s_pk);
  w.Bytes(advert.c_pk);
  w.Bytes(advert.signature);
  return w.Take();
}

namespace {

KeyAdvert ReadAdvert(ByteReader& r) {
  KeyAdvert a;
  a.owner = r.U32();
  a.sign_pk = ReadArray<32>(r);
  a.s_pk = ReadArray<32>(r);
  a.c_pk = ReadArray<32>(r);
  a.signature = ReadArray<64>(r);
  return a;
}

}  // namespace

KeyAdvert DecodeKeyAdvert(std::span<const uint8_t> payload) {
  ByteReader r(payload);
  KeyAdvert a = ReadAdvert(r);
  r.ExpectEnd();
  return a;
}

std::vector<uint8_t> EncodeAdvertList(const std::vector<KeyAdvert>& adverts) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(adverts.size()));
  for (const auto& a : adverts) w.Bytes(EncodeKeyAdvert(a));
  return w.Take();
}

std::vector<KeyAdvert> DecodeAdvertList(std::span<const uint8_t> payload) {
  ByteReader r(payload);
  const uint32_t n = r.U32();
  std::vector<KeyAdvert> out;
  for (uint32_t i = 0; i < n; ++i) out.push_back(ReadAdvert(r));
  r.ExpectEnd();
  return out;
}

std::vector<uint8_t> EncodeShareList(const std::vector<EncryptedShare>& shares) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(shares.size()));
  for (const auto& s : shares) {
    w.U32(s.owner);
    w.U32(s.holder);
    w.U32(static_cast<uint32_t>(s.ciphertext.size()));
    w.Bytes(s.ciphertext);
  }
  return w.Take();
}

std::vector<EncryptedShare> DecodeShareList(std::span<const uint8_t> payload) {
  ByteReader r(payload);
  const uint32_t n = r.U32();
  std::vector<EncryptedShare> out(n);
  for (auto& s : out) {
    s.owner = r.U32();
    s.holder = r.U32();
    const uint32_t len = r.U32();
    auto c = r.Bytes(len);
    s.ciphertext.assign(c.begin(), c.end());
  }
  r.ExpectEnd();
  return out;
}

std::vector<uint8_t> EncodeMaskedInput(uint32_t owner,
                                       std::span<const uint64_t> masked) {
  ByteWriter w;
  w.U32(owner);
  w.U64Array(masked);
  return w.Take();
}

std::pair<uint32_t, std::vector<uint64_t>> DecodeMaskedInput(
    std::span<const uint8_t> payload) {
  ByteReader r(payload);
  const uint32_t owner = r.U32();
  auto values = r.U64Array();
  r.ExpectEnd();
  return {owner, std::move(values)};
}

std::vector<uint8_t> EncodeShareRequest(
    const std::vector<ShareRequestEntry>& entries) {
  ByteWriter w;
  w.U32(static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    w.U32(e.target);
    w.U8(static_cast<uint8_t>(e.kind));
  }
  return w.Take();
}

std::vector<ShareRequestEntry> DecodeShareRequest(
    std::span<const uint8_t> payload) {
  ByteReader r(payload);
  const uint32_t n = r.U32();
  std::vector<ShareRequestEntry> out(n);
  for (auto& e : out) {
    e.target = r.U32();
    e.kind = ReadKind(r);
  }
  r.ExpectEnd();
  return out;
}

std::vector<uint8_t> EncodeShareResponse(
    uint32_t holder, const std::vector<ShareResponseEntry>& entries) {
  ByteWriter w;
  w.U32(holder);
  w.U32(static_cast<uint32_t>(entries.size()));
  for (const auto& e : entries) {
    w.U32(e.target);
    w.U8(static_cast<uint8_t>(e.kind));
    WriteShare(w, e.share);
  }
  return w.Take();
}

std::pair<uint32_t, std::vector<ShareResponseEntry>> DecodeShareResponse(
    std::span<const uint8_t> payload) {
  ByteReader r(payload);
  const uint32_t holder = r.U32();
  const uint32_t n = r.U32();
  std::vector<ShareResponseEntry> out(n);
  for (auto& e : out) {
    e.target = r.U32();
    e.kind = ReadKind(r);
    e.share = ReadShare(r);
  }
  r.ExpectEnd();
  return {holder, std::move(out)};
}

// ---------------------------------------------------------------------------
// Client.

SecAggClient::SecAggClient(uint32_t index, const SessionParams& params,
                           std::vector<uint64_t> input, SecureRandom rng)
    : index_(index),
      params_(params),
      input_(std::move(input)),
      rng_(std::move(rng)) {
  params_.Validate();
  if (index_ >= params_.num_participants) {
    throw InputError("participant index out of range");
  }
  if (input_.size() != params_.vector_length) {
    throw InputError("input length does not match the session");
  }
}

std::vector<uint8_t> SecAggClient::Advertise() {
  if (stage_ != Stage::kInit) throw ProtocolError("advertise out of order");
  sign_keys_ = SigningKeyPair::Generate(rng_);
  s_keys_ = AgreementKeyPair::Generate(rng_);
  c_keys_ = AgreementKeyPair::Generate(rng_);
  rng_.Fill(self_seed_);
  KeyAdvert advert;
  advert.owner = index_;
  advert.sign_pk = sign_keys_.public_key;
  advert.s_pk = s_keys_.public_key;
  advert.c_pk = c_keys_.public_key;
  advert.signature =
      Sign(sign_keys_, AdvertSignedMessage(params_.session_id, advert));
  stage_ = Stage::kAdvertised;
  return EncodeKeyAdvert(advert);
}

std::vector<uint8_t> SecAggClient::ShareKeys(
    std::span<const uint8_t> advert_list) {
  if (stage_ != Stage::kAdvertised) throw ProtocolError("share out of order");
  peers_.clear();
  for (const auto& a : DecodeAdvertList(advert_list)) {
    if (a.owner >= params_.num_participants) {
      throw ProtocolError("advert from unknown participant");
    }
    if (!VerifyAdvert(params_.session_id, a)) {
      throw ProtocolError("advert signature from " + std::to_string(a.owner) +
                          " does not verify");
    }
    if (!peers_.emplace(a.owner, a).second) {
      throw ProtocolError("duplicate advert");
    }
  }
  auto self = peers_.find(index_);
  if (self == peers_.end() || self->second.s_pk != s_keys_.public_key ||
      self->second.c_pk != c_keys_.public_key) {
    throw ProtocolError("own advert missing or altered");
  }
  if (peers_.size() < params_.threshold) {
    throw ProtocolError("fewer than t advertised participants");
  }

  std::vector<uint32_t> xs;
  for (const auto& [id, a] : peers_) xs.push_back(id + 1);
  auto b_shares = ShamirSplit(self_seed_, params_.threshold, xs, rng_);
  auto s_shares = ShamirSplit(s_keys_.secret_key, params_.threshold, xs, rng_);

  const auto ad = SessionAd(params_.session_id);
  std::vector<EncryptedShare> out;
  size_t i = 0;
  for (const auto& [id, a] : peers_) {
    if (id == index_) {
      held_[index_] = {b_shares[i], s_shares[i]};
      ++i;
      continue;
    }
    ByteWriter plain;
    plain.U32(index_);
    plain.U32(id);
    plain.Bytes(b_shares[i].y);
    plain.Bytes(s_shares[i].y);
    const Bytes32 key =
        ShareEncryptionKey(SharedKey(c_keys_.secret_key, a.c_pk));
    share_keys_[id] = key;
    const auto nonce = ShareNonce(index_, id);
    const auto plaintext = plain.Take();
    out.push_back({index_, id, AeadSeal(key, nonce, ad, plaintext)});
    ++i;
  }
  stage_ = Stage::kShared;
  return EncodeShareList(out);
}

std::vector<uint8_t> SecAggClient::MaskInput(
    std::span<const uint8_t> share_bundle) {
  if (stage_ != Stage::kShared) throw ProtocolError("mask out of order");
  const auto ad = SessionAd(params_.session_id);
  for (const auto& s : DecodeShareList(share_bundle)) {
    auto peer = peers_.find(s.owner);
    if (s.holder != index_ || s.owner == index_ || peer == peers_.end()) {
      throw ProtocolError("share bundle entry not addressed to this client");
    }
    if (held_.count(s.owner)) throw ProtocolError("duplicate share");
    const Bytes32& key = share_keys_.at(s.owner);
    const auto nonce = ShareNonce(s.owner, index_);
    auto plain = AeadOpen(key, nonce, ad, s.ciphertext);
    if (!plain) throw ProtocolError("share ciphertext fails authentication");
    ByteReader r(*plain);
    if (r.U32() != s.owner || r.U32() != index_) {
      throw ProtocolError("share header mismatch");
    }
    HeldShare held;
    held.self_mask.x = index_ + 1;
    auto b = r.Bytes(kSelfSeedBytes);
    held.self_mask.y.assign(b.begin(), b.end());
    held.secret_key.x = index_ + 1;
    auto k = r.Bytes(kSecretKeyBytes);
    held.secret_key.y.assign(k.begin(), k.end());
    r.ExpectEnd();
    held_.emplace(s.owner, std::move(held));
  }
  if (held_.size() < params_.threshold) {
    throw ProtocolError("fewer than t participants shared keys");
  }

  masked_ = input_;
  ApplyMask(params_.prg, self_seed_, masked_, /*subtract=*/false);
  for (const auto& [v, unused] : held_) {
    if (v == index_) continue;
    const Bytes16 seed =
        PairwiseSeed(SharedKey(s_keys_.secret_key, peers_.at(v).s_pk));
    ApplyMask(params_.prg, seed, masked_, /*subtract=*/v < index_);
  }
  stage_ = Stage::kMasked;
  return EncodeMaskedInput(index_, masked_);
}

std::vector<uint8_t> SecAggClient::Unmask(
    std::span<const uint8_t> share_request) {
  if (stage_ != Stage::kMasked) {
    throw ProtocolError("unmask out of order or repeated");
  }
  stage_ = Stage::kDone;
  const auto entries = DecodeShareRequest(share_request);
  std::map<uint32_t, ShareKind> kinds;
  size_t self_mask_count = 0;
  for (const auto& e : entries) {
    if (!held_.count(e.target)) {
      throw ProtocolError("share requested for a participant outside U2");
    }
    if (!kinds.emplace(e.target, e.kind).second) {
      throw ProtocolError("two share requests for participant " +
                          std::to_string(e.target));
    }
    if (e.kind == ShareKind::kSecretKey && e.target == index_) {
      throw ProtocolError("request for own secret-key share");
    }
    if (e.kind == ShareKind::kSelfMask) ++self_mask_count;
  }
  if (kinds.count(index_) == 0 || kinds.at(index_) != ShareKind::kSelfMask) {
    throw ProtocolError("responder not listed as a surviving participant");
  }
  if (self_mask_count < params_.threshold) {
    throw ProtocolError("fewer than t surviving participants");
  }
  std::vector<ShareResponseEntry> out;
  for (const auto& [target, kind] : kinds) {
    const HeldShare& held = held_.at(target);
    out.push_back({target, kind,
                   kind == ShareKind::kSelfMask ? held.self_mask
                                                : held.secret_key});
  }
  return EncodeShareResponse(index_, out);
}

// ---------------------------------------------------------------------------
// Server.

SecAggServer::SecAggServer(const SessionParams& params) : params_(params) {
  params_.Validate();
}

bool SecAggServer::OnAdvert(std::span<const uint8_t> payload) {
  KeyAdvert a;
  try {
    a = DecodeKeyAdvert(payload);
  } catch (const ProtocolError&) {
    return false;
  }
  if (a.owner >= params_.num_participants || u1_.count(a.owner) ||
      !VerifyAdvert(params_.session_id, a)) {
    return false;
  }
  adverts_.emplace(a.owner, a);
  u1_.insert(a.owner);
  return true;
}

std::vector<uint8_t> SecAggServer::AdvertList() const {
  std::vector<KeyAdvert> list;
  for (const auto& [id, a] : adverts_) list.push_back(a);
  return EncodeAdvertList(list);
}

bool SecAggServer::OnShareBatch(uint32_t sender,
                                std::span<const uint8_t> payload) {
  if (!u1_.count(sender) || u2_.count(sender)) return false;
  std::vector<EncryptedShare> shares;
  try {
    shares = DecodeShareList(payload);
  } catch (const ProtocolError&) {
    return false;
  }
  std::set<uint32_t> holders;
  for (const auto& s : shares) {
    if (s.owner != sender || s.holder == sender || !u1_.count(s.holder) ||
        !holders.insert(s.holder).second) {
      return false;
    }
  }
  if (holders.size() + 1 != u1_.size()) return false;
  for (auto& s : shares) outbox_[s.holder].push_back(std::move(s));
  u2_.insert(sender);
  return true;
}

std::map<uint32_t, std::vector<uint8_t>> SecAggServer::Bundles() const {
  std::map<uint32_t, std::vector<uint8_t>> out;
  for (uint32_t holder : u2_) {
    std::vector<EncryptedShare> bundle;
    auto it = outbox_.find(holder);
    if (it != outbox_.end()) {
      for (const auto& s : it->second) {
        if (u2_.count(s.owner)) bundle.push_back(s);
      }
    }
    std::sort(bundle.begin(), bundle.end(),
              [](const auto& a, const auto& b) { return a.owner < b.owner; });
    out.emplace(holder, EncodeShareList(bundle));
  }
  return out;
}

bool SecAggServer::OnMaskedInput(uint32_t sender,
                                 std::span<const uint8_t> payload) {
  if (!u2_.count(sender) || u3_.count(sender)) return false;
  std::pair<uint32_t, std::vector<uint64_t>> decoded;
  try {
    decoded = DecodeMaskedInput(payload);
  } catch (const ProtocolError&) {
    return false;
  }
  if (decoded.first != sender ||
      decoded.second.size() != params_.vector_length) {
    return false;
  }
  if (sum_.empty()) sum_.assign(params_.vector_length, 0);
  for (size_t i = 0; i < sum_.size(); ++i) sum_[i] += decoded.second[i];
  u3_.insert(sender);
  return true;
}

std::vector<ShareRequestEntry> SecAggServer::ShareRequestEntries() const {
  std::vector<ShareRequestEntry> out;
  for (uint32_t w : u2_) {
    out.push_back({w, u3_.count(w) ? ShareKind::kSelfMask
                                   : ShareKind::kSecretKey});
  }
  return out;
}

bool SecAggServer::OnShareResponse(uint32_t sender,
                                   std::span<const uint8_t> payload) {
  if (!u3_.count(sender) || u5_.count(sender)) return false;
  std::pair<uint32_t, std::vector<ShareResponseEntry>> decoded;
  try {
    decoded = DecodeShareResponse(payload);
  } catch (const ProtocolError&) {
    return false;
  }
  if (decoded.first != sender) return false;
  for (const auto& e : decoded.second) {
    if (e.share.x != sender + 1 || !u2_.count(e.target)) return false;
    const bool live = u3_.count(e.target) > 0;
    if (live != (e.kind == ShareKind::kSelfMask)) return false;
  }
  for (auto& e : decoded.second) {
    auto& bucket = e.kind == ShareKind::kSelfMask
                       ? self_mask_shares_[e.target]
                       : secret_key_shares_[e.target];
    bucket.push_back(std::move(e.share));
  }
  u5_.insert(sender);
  return true;
}

std::vector<uint64_t> SecAggServer::Finish() {
  if (u3_.size() < params_.threshold) {
    throw ProtocolError("fewer than t masked inputs");
  }
  if (u5_.size() < params_.threshold) {
    throw ProtocolError("fewer than t unmasking responses");
  }
  std::vector<uint64_t> result = sum_;
  for (uint32_t u : u3_) {
    const auto seed_bytes = Reconstruct(self_mask_shares_[u], params_.threshold,
                                        kSelfSeedBytes);
    Bytes16 seed;
    std::copy(seed_bytes.begin(), seed_bytes.end(), seed.begin());
    ApplyMask(params_.prg, seed, result, /*subtract=*/true);
  }
  for (uint32_t w : u2_) {
    if (u3_.count(w)) continue;
    const auto key_bytes = Reconstruct(secret_key_shares_[w],
                                       params_.threshold, kSecretKeyBytes);
    Bytes32 secret;
    std::copy(key_bytes.begin(), key_bytes.end(), secret.begin());
    if (AgreementPublicKey(secret) != adverts_.at(w).s_pk) {
      throw ProtocolError("reconstructed key of " + std::to_string(w) +
                          " does not match its advert");
    }
    for (uint32_t v : u3_) {
      const Bytes16 seed =
          PairwiseSeed(SharedKey(secret, adverts_.at(v).s_pk));
      // v added the stream when v < w and subtracted it otherwise.
      ApplyMask(params_.prg, seed, result, /*subtract=*/v < w);
    }
  }
  return result;
}

}  // namespace fedrec::secagg
