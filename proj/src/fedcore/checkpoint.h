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

#ifndef FEDREC_FEDCORE_CHECKPOINT_H_
#define FEDREC_FEDCORE_CHECKPOINT_H_

#include <string>

#include "fedcore/federation.h"

namespace fedrec::fedcore {

// Binary checkpoint of the server state, little-endian:
//   "FRCK" | u32 version | u64 round
//   u64 vocab | u64 token_dim | u64 news_dim | u64 heads | u64 attention_dim
//   u8 pooling
//   f64 array user model | f64 array user delta | f64 array user v
//   f64 array encoder    | f64 array encoder delta | f64 array encoder v
// Each f64 array carries a u64 element count. The news table is not
// stored; it is re-encoded on load.
inline constexpr uint32_t kCheckpointVersion = 1;

std::vector<uint8_t> SerializeCheckpoint(const ServerState& state);
// Throws IoError on a bad magic, version or layout.
ServerState DeserializeCheckpoint(std::span<const uint8_t> bytes,
                                  recmodel::ModelDims* dims = nullptr);

void WriteCheckpoint(const std::string& path, const ServerState& state);
ServerState ReadCheckpoint(const std::string& path,
                           recmodel::ModelDims* dims = nullptr);

// Flat user model only: u64 count followed by little-endian doubles.
void WriteUserModel(const std::string& path,
                    const recmodel::UserModelParams& params);

}  // namespace fedrec::fedcore

#endif  // FEDREC_FEDCORE_CHECKPOINT_H_
