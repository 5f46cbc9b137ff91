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

#include "fedcore/checkpoint.h"

#include <fstream>
#include <iterator>

#include "common/byte_io.h"
#include "common/error.h"

namespace fedrec::fedcore {
namespace {

constexpr char kMagic[4] = {'F', 'R', 'C', 'K'};

void WriteFile(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace

std::vector<uint8_t> SerializeCheckpoint(const ServerState& s) {
  ByteWriter w;
  w.Bytes(std::span(reinterpret_cast<const uint8_t*>(kMagic), 4));
  w.U32(kCheckpointVersion);
  w.U64(s.round);
  w.U64(s.encoder.vocab_size());
  w.U64(s.encoder.token_dim());
  w.U64(s.encoder.news_dim());
  w.U64(s.user_model.num_heads);
  w.U64(s.user_model.attention_dim());
  w.U8(s.encoder.pooling == recmodel::NewsPooling::kMean ? 0 : 1);
  w.F64Array(s.user_model.Flatten());
  w.F64Array(s.user_moments.first);
  w.F64Array(s.user_moments.second);
  w.F64Array(s.encoder.Flatten());
  w.F64Array(s.encoder_moments.first);
  w.F64Array(s.encoder_moments.second);
  return w.Take();
}

ServerState DeserializeCheckpoint(std::span<const uint8_t> bytes,
                                  recmodel::ModelDims* dims_out) {
  try {
    ByteReader r(bytes);
    auto magic = r.Bytes(4);
    if (!std::equal(magic.begin(), magic.end(), kMagic)) {
      throw IoError("not a checkpoint file");
    }
    if (r.U32() != kCheckpointVersion) {
      throw IoError("unsupported checkpoint version");
    }
    ServerState s;
    s.round = r.U64();
    recmodel::ModelDims dims;
    dims.vocab_size = r.U64();
    dims.token_dim = r.U64();
    dims.news_dim = r.U64();
    dims.num_heads = r.U64();
    dims.attention_dim = r.U64();
    const uint8_t pooling = r.U8();
    if (pooling > 1) throw IoError("unknown pooling in checkpoint");
    dims.pooling = pooling == 0 ? recmodel::NewsPooling::kMean
                                : recmodel::NewsPooling::kAttention;
    dims.Validate();
    s.user_model = recmodel::UserModelParams::Zeros(dims);
    s.encoder = recmodel::NewsEncoderParams::Zeros(dims);
    auto user = r.F64Array();
    s.user_moments.first = r.F64Array();
    s.user_moments.second = r.F64Array();
    auto encoder = r.F64Array();
    s.encoder_moments.first = r.F64Array();
    s.encoder_moments.second = r.F64Array();
    r.ExpectEnd();
    const size_t nu = s.user_model.NumParams();
    const size_t ne = s.encoder.NumParams();
    if (user.size() != nu || s.user_moments.first.size() != nu ||
        s.user_moments.second.size() != nu || encoder.size() != ne ||
        s.encoder_moments.first.size() != ne ||
        s.encoder_moments.second.size() != ne) {
      throw IoError("checkpoint arrays do not match its dimensions");
    }
    s.user_model.AssignFlat(user);
    s.encoder.AssignFlat(encoder);
    if (dims_out) *dims_out = dims;
    return s;
  } catch (const ProtocolError& e) {
    throw IoError(std::string("truncated checkpoint: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(std::string("bad checkpoint dimensions: ") + e.what());
  }
}

void WriteCheckpoint(const std::string& path, const ServerState& state) {
  WriteFile(path, SerializeCheckpoint(state));
}

ServerState ReadCheckpoint(const std::string& path,
                           recmodel::ModelDims* dims) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  return DeserializeCheckpoint(bytes, dims);
}

void WriteUserModel(const std::string& path,
                    const recmodel::UserModelParams& params) {
  ByteWriter w;
  w.F64Array(params.Flatten());
  WriteFile(path, w.Take());
}

}  // namespace fedrec::fedcore
