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

#include "secagg/fixed_point.h"

#include <cmath>
#include <string>

#include "common/error.h"

namespace fedrec::secagg {

uint64_t QuantizeOne(double x, uint32_t fractional_bits) {
  if (fractional_bits >= 63) {
    throw ProtocolError("fixed-point fraction bits must be < 63");
  }
  const double limit = std::ldexp(1.0, 62 - static_cast<int>(fractional_bits));
  if (!std::isfinite(x) || std::fabs(x) >= limit) {
    throw ProtocolError("value " + std::to_string(x) +
                        " exceeds fixed-point range 2^" +
                        std::to_string(62 - fractional_bits));
  }
  const double scaled = std::ldexp(x, static_cast<int>(fractional_bits));
  return static_cast<uint64_t>(static_cast<int64_t>(std::llround(scaled)));
}

double DequantizeOne(uint64_t q, uint32_t fractional_bits) {
  return std::ldexp(static_cast<double>(static_cast<int64_t>(q)),
                    -static_cast<int>(fractional_bits));
}

std::vector<uint64_t> Quantize(std::span<const double> x,
                               uint32_t fractional_bits) {
  std::vector<uint64_t> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = QuantizeOne(x[i], fractional_bits);
  return out;
}

std::vector<double> Dequantize(std::span<const uint64_t> q,
                               uint32_t fractional_bits) {
  std::vector<double> out(q.size());
  for (size_t i = 0; i < q.size(); ++i) out[i] = DequantizeOne(q[i], fractional_bits);
  return out;
}

}  // namespace fedrec::secagg
