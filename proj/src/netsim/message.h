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

#ifndef FEDREC_NETSIM_MESSAGE_H_
#define FEDREC_NETSIM_MESSAGE_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fedrec::netsim {

using PartyId = uint32_t;

enum class MessageTag : uint32_t {
  // Secure aggregation.
  kKeyAdvert = 1,
  kKeyAdvertList = 2,
  kShareBatch = 3,
  kShareBundle = 4,
  kMaskedInput = 5,
  kShareRequest = 6,
  kShareResponse = 7,
  // Federated training.
  kPlainInput = 16,
  kUserModel = 17,
  kNewsReprs = 18,
  kNewsEncoder = 19,
};

std::string_view MessageTagName(MessageTag tag);

// Frame header on the wire, little-endian:
//   u32 tag | u32 sender | u32 receiver | u32 payload length
inline constexpr size_t kHeaderBytes = 16;

struct Delivery {
  PartyId from = 0;
  PartyId to = 0;
  MessageTag tag{};
  std::vector<uint8_t> payload;
};

std::vector<uint8_t> EncodeFrame(PartyId from, PartyId to, MessageTag tag,
                                 const std::vector<uint8_t>& payload);
Delivery DecodeFrame(const std::vector<uint8_t>& frame);

}  // namespace fedrec::netsim

#endif  // FEDREC_NETSIM_MESSAGE_H_
