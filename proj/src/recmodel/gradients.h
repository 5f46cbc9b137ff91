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

#ifndef FEDREC_RECMODEL_GRADIENTS_H_
#define FEDREC_RECMODEL_GRADIENTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "common/types.h"
#include "recmodel/news_encoder.h"
#include "recmodel/params.h"
#include "recmodel/repr_table.h"

namespace fedrec::recmodel {

// One clicked candidate with K sampled non-clicked candidates from the same
// impression. candidates[label_index] is the clicked item.
struct TrainingSample {
  std::vector<ItemIndex> history;
  std::vector<ItemIndex> candidates;
  uint32_t label_index = 0;
};

// Gradients of a client's mean loss. user_grad follows
// UserModelParams::Flatten() order; repr_grads only has entries for items
// the samples reference.
struct LocalGradients {
  std::vector<double> user_grad;
  ReprGradients repr_grads;
  size_t sample_count = 0;
  double loss = 0.0;  // mean sample loss
};

// Input dropout on the user encoder's history rows. Disabled at rate 0.
struct DropoutOptions {
  double rate = 0.0;
  uint64_t seed = 0;
};

// Mean categorical cross-entropy over `samples`. Throws InputError when
// `samples` is empty or references an item missing from `reprs`.
double UserLoss(std::span<const TrainingSample> samples,
                const UserModelParams& params, const ReprTable& reprs);

// Analytic gradients of UserLoss w.r.t. the user model and the input item
// representations. Empty `samples` gives zero gradients and count 0.
// Throws ProtocolError when a referenced item has no representation.
LocalGradients ComputeLocalGradients(std::span<const TrainingSample> samples,
                                     const UserModelParams& params,
                                     const ReprTable& reprs,
                                     const DropoutOptions& dropout = {});

// Sorted, de-duplicated items referenced by a set of samples.
std::vector<ItemIndex> ReferencedItems(std::span<const TrainingSample> samples);

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_GRADIENTS_H_
