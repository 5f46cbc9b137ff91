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

#include "common/byte_io.h"

#include <bit>
#include <cstring>

#include "common/error.h"

namespace fedrec {

void StoreU32(uint8_t* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<uint8_t>(v >> (8 * i));
}

void StoreU64(uint8_t* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<uint8_t>(v >> (8 * i));
}

uint32_t LoadU32(const uint8_t* in) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in[i]) << (8 * i);
  return v;
}

uint64_t LoadU64(const uint8_t* in) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(in[i]) << (8 * i);
  return v;
}

void ByteWriter::U32(uint32_t v) {
  uint8_t b[4];
  StoreU32(b, v);
  buf_.insert(buf_.end(), b, b + 4);
}

void ByteWriter::U64(uint64_t v) {
  uint8_t b[8];
  StoreU64(b, v);
  buf_.insert(buf_.end(), b, b + 8);
}

void ByteWriter::F64(double v) { U64(std::bit_cast<uint64_t>(v)); }

void ByteWriter::Bytes(std::span<const uint8_t> bytes) {
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

void ByteWriter::String(std::string_view s) {
  U32(static_cast<uint32_t>(s.size()));
  buf_.insert(buf_.end(), s.begin(), s.end());
}

void ByteWriter::U64Array(std::span<const uint64_t> values) {
  U64(values.size());
  size_t at = buf_.size();
  buf_.resize(at + 8 * values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    StoreU64(buf_.data() + at + 8 * i, values[i]);
  }
}

void ByteWriter::F64Array(std::span<const double> values) {
  U64(values.size());
  size_t at = buf_.size();
  buf_.resize(at + 8 * values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    StoreU64(buf_.data() + at + 8 * i, std::bit_cast<uint64_t>(values[i]));
  }
}

void ByteReader::Need(size_t n) const {
  if (n > remaining()) {
    throw ProtocolError("truncated record: need " + std::to_string(n) +
                        " bytes, have " + std::to_string(remaining()));
  }
}

uint8_t ByteReader::U8() {
  Need(1);
  return data_[pos_++];
}

uint32_t ByteReader::U32() {
  Need(4);
  uint32_t v = LoadU32(data_.data() + pos_);
  pos_ += 4;
  return v;
}

uint64_t ByteReader::U64() {
  Need(8);
  uint64_t v = LoadU64(data_.data() + pos_);
  pos_ += 8;
  return v;
}

double ByteReader::F64() { return std::bit_cast<double>(U64()); }

std::span<const uint8_t> ByteReader::Bytes(size_t n) {
  Need(n);
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::string ByteReader::String() {
  uint32_t n = U32();
  auto b = Bytes(n);
  return std::string(b.begin(), b.end());
}

std::vector<uint64_t> ByteReader::U64Array() {
  uint64_t n = U64();
  if (n > remaining() / 8) throw ProtocolError("array length exceeds record");
  std::vector<uint64_t> out(n);
  for (auto& v : out) v = U64();
  return out;
}

std::vector<double> ByteReader::F64Array() {
  uint64_t n = U64();
  if (n > remaining() / 8) throw ProtocolError("array length exceeds record");
  std::vector<double> out(n);
  for (auto& v : out) v = F64();
  return out;
}

void ByteReader::ExpectEnd() const {
  if (!AtEnd()) {
    throw ProtocolError(std::to_string(remaining()) +
                        " trailing bytes after record");
  }
}

}  // namespace fedrec
