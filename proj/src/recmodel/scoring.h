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

#ifndef FEDREC_RECMODEL_SCORING_H_
#define FEDREC_RECMODEL_SCORING_H_

#include <cstddef>
#include <span>
#include <vector>

#include "common/types.h"

namespace fedrec::recmodel {

// Click score: dot product. Throws InputError on dimension mismatch.
double Score(const Eigen::Ref<const Vector>& user,
             const Eigen::Ref<const Vector>& candidate);

// Max-shifted softmax.
std::vector<double> Softmax(std::span<const double> logits);
Vector SoftmaxVector(const Eigen::Ref<const Vector>& logits);

// Given y = softmax(x) and dL/dy, returns dL/dx.
Vector SoftmaxBackward(const Eigen::Ref<const Vector>& y,
                       const Eigen::Ref<const Vector>& dy);

// Categorical cross-entropy of one sample: -log softmax(scores)[label].
double SampleLoss(std::span<const double> scores, size_t label_index);

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_SCORING_H_
