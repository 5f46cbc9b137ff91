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

#ifndef FEDREC_COMMON_BYTE_IO_H_
#define FEDREC_COMMON_BYTE_IO_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedrec {

// Little-endian binary writer used for wire messages and checkpoints.
class ByteWriter {
 public:
  void U8(uint8_t v) { buf_.push_back(v); }
  void U32(uint32_t v);
  void U64(uint64_t v);
  void F64(double v);
  void Bytes(std::span<const uint8_t> bytes);
  void String(std::string_view s);  // u32 length prefix
  void U64Array(std::span<const uint64_t> values);  // u64 count prefix
  void F64Array(std::span<const double> values);    // u64 count prefix

  size_t size() const { return buf_.size(); }
  std::vector<uint8_t> Take() { return std::move(buf_); }

 private:
  std::vector<uint8_t> buf_;
};

// Bounds-checked reader. Short reads raise ProtocolError.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  double F64();
  std::span<const uint8_t> Bytes(size_t n);
  std::string String();
  std::vector<uint64_t> U64Array();
  std::vector<double> F64Array();

  size_t remaining() const { return data_.size() - pos_; }
  bool AtEnd() const { return pos_ == data_.size(); }
  void ExpectEnd() const;

 private:
  void Need(size_t n) const;

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

void StoreU32(uint8_t* out, uint32_t v);
void StoreU64(uint8_t* out, uint64_t v);
uint32_t LoadU32(const uint8_t* in);
uint64_t LoadU64(const uint8_t* in);

}  // namespace fedrec

#endif  // FEDREC_COMMON_BYTE_IO_H_
