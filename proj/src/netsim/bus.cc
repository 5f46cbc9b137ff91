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

#include "netsim/bus.h"

#include "common/byte_io.h"
#include "common/error.h"

namespace fedrec::netsim {

std::string_view MessageTagName(MessageTag tag) {
  switch (tag) {
    case MessageTag::kKeyAdvert: return "KeyAdvert";
    case MessageTag::kKeyAdvertList: return "KeyAdvertList";
    case MessageTag::kShareBatch: return "ShareBatch";
    case MessageTag::kShareBundle: return "ShareBundle";
    case MessageTag::kMaskedInput: return "MaskedInput";
    case MessageTag::kShareRequest: return "ShareRequest";
    case MessageTag::kShareResponse: return "ShareResponse";
    case MessageTag::kPlainInput: return "PlainInput";
    case MessageTag::kUserModel: return "UserModel";
    case MessageTag::kNewsReprs: return "NewsReprs";
    case MessageTag::kNewsEncoder: return "NewsEncoder";
  }
  return "Unknown";
}

std::vector<uint8_t> EncodeFrame(PartyId from, PartyId to, MessageTag tag,
                                 const std::vector<uint8_t>& payload) {
  std::vector<uint8_t> frame(kHeaderBytes + payload.size());
  StoreU32(frame.data(), static_cast<uint32_t>(tag));
  StoreU32(frame.data() + 4, from);
  StoreU32(frame.data() + 8, to);
  StoreU32(frame.data() + 12, static_cast<uint32_t>(payload.size()));
  std::copy(payload.begin(), payload.end(), frame.begin() + kHeaderBytes);
  return frame;
}

Delivery DecodeFrame(const std::vector<uint8_t>& frame) {
  if (frame.size() < kHeaderBytes) throw ProtocolError("short frame");
  Delivery d;
  d.tag = static_cast<MessageTag>(LoadU32(frame.data()));
  d.from = LoadU32(frame.data() + 4);
  d.to = LoadU32(frame.data() + 8);
  const uint32_t len = LoadU32(frame.data() + 12);
  if (frame.size() != kHeaderBytes + len) {
    throw ProtocolError("frame length does not match header");
  }
  d.payload.assign(frame.begin() + kHeaderBytes, frame.end());
  return d;
}

PartyId Bus::AddParty(std::string name) {
  names_.push_back(std::move(name));
  inboxes_.emplace_back();
  dropped_.push_back(false);
  return static_cast<PartyId>(names_.size() - 1);
}

const std::string& Bus::PartyName(PartyId id) const {
  CheckParty(id);
  return names_[id];
}

void Bus::CheckParty(PartyId id) const {
  if (id >= names_.size()) {
    throw InputError("unknown party " + std::to_string(id));
  }
}

void Bus::BeginRound(uint64_t round) {
  round_ = round;
  phase_ = "setup";
  for (auto& inbox : inboxes_) inbox.clear();
  std::fill(dropped_.begin(), dropped_.end(), false);
}

void Bus::Drop(PartyId party) {
  CheckParty(party);
  dropped_[party] = true;
  inboxes_[party].clear();
}

bool Bus::IsDropped(PartyId party) const {
  CheckParty(party);
  return dropped_[party];
}

DeliveryReceipt Bus::Send(PartyId from, PartyId to, MessageTag tag,
                          const std::vector<uint8_t>& payload) {
  CheckParty(from);
  CheckParty(to);
  DeliveryReceipt receipt;
  receipt.bytes = kHeaderBytes + payload.size();
  receipt.sequence = sequence_++;
  if (dropped_[from] || dropped_[to]) {
    ledger_.RecordDrop({round_, from, to, phase_, receipt.bytes});
    return receipt;
  }
  inboxes_[to].push_back(EncodeFrame(from, to, tag, payload));
  ledger_.Record(round_, from, Direction::kUp, phase_, receipt.bytes);
  ledger_.Record(round_, to, Direction::kDown, phase_, receipt.bytes);
  receipt.delivered = true;
  return receipt;
}

std::optional<Delivery> Bus::Receive(PartyId party) {
  CheckParty(party);
  auto& inbox = inboxes_[party];
  if (inbox.empty()) return std::nullopt;
  Delivery d = DecodeFrame(inbox.front());
  inbox.pop_front();
  return d;
}

bool Bus::HasPending(PartyId party) const {
  CheckParty(party);
  return !inboxes_[party].empty();
}

}  // namespace fedrec::netsim
