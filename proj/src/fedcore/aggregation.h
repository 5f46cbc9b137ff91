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

#ifndef FEDREC_FEDCORE_AGGREGATION_H_
#define FEDREC_FEDCORE_AGGREGATION_H_

#include <optional>
#include <span>
#include <vector>

#include "common/types.h"
#include "recmodel/gradients.h"

namespace fedrec::fedcore {

// Weighted upload of one client in efficient mode:
//   [ |B| g_u  |  |B| g_e for each union item in order  |  |B| ]
// Items the client does not reference contribute zero rows. Throws
// ProtocolError when the client has a gradient for an item outside the
// union.
std::vector<double> FlattenUpload(const recmodel::LocalGradients& grads,
                                  std::span<const ItemIndex> union_ids,
                                  size_t dim);

// Upload of the whole-model baseline: [ |B| g_u | |B| g_n | |B| ].
std::vector<double> FlattenWholeModelUpload(
    std::span<const double> user_grad, std::span<const double> encoder_grad,
    double weight);

// Sum of weighted uploads.
struct AggregatedUpdate {
  std::vector<double> user_grad_sum;
  std::vector<double> repr_grad_sum;  // union order, row-major, or encoder
  double weight_sum = 0.0;
};

AggregatedUpdate SplitSum(std::span<const double> sum, size_t user_params);

struct NormalizedUpdate {
  std::vector<double> user_grad;
  std::vector<double> repr_grad;
};

// Divides once by the weight sum. Returns nullopt when the weight sum is
// not positive.
std::optional<NormalizedUpdate> Normalize(const AggregatedUpdate& update);

// Rows of a union-ordered flat gradient as a per-item map.
recmodel::ReprGradients ToReprGradients(std::span<const double> flat,
                                        std::span<const ItemIndex> union_ids,
                                        size_t dim);

}  // namespace fedrec::fedcore

#endif  // FEDREC_FEDCORE_AGGREGATION_H_
