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

#ifndef FEDREC_SECAGG_FIXED_POINT_H_
#define FEDREC_SECAGG_FIXED_POINT_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fedrec::secagg {

// Fixed-point encoding into Z_{2^64}: q = round(x * 2^f) mod 2^64.
// Each |x| must be below 2^(62 - f) so that sums of many inputs do not wrap;
// violations raise ProtocolError before anything is sent.
std::vector<uint64_t> Quantize(std::span<const double> x,
                               uint32_t fractional_bits);

// Inverse of Quantize under the two's-complement reading of Z_{2^64}.
std::vector<double> Dequantize(std::span<const uint64_t> q,
                               uint32_t fractional_bits);

uint64_t QuantizeOne(double x, uint32_t fractional_bits);
double DequantizeOne(uint64_t q, uint32_t fractional_bits);

}  // namespace fedrec::secagg

#endif  // FEDREC_SECAGG_FIXED_POINT_H_
