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

#ifndef FEDREC_RECMODEL_USER_ENCODER_H_
#define FEDREC_RECMODEL_USER_ENCODER_H_

#include <vector>

#include "common/types.h"
#include "recmodel/params.h"

namespace fedrec::recmodel {

// Intermediate values of one user-encoder forward pass, kept for backward.
struct UserEncoderTrace {
  Matrix input;              // M x d clicked-news representations
  Matrix query, key, value;  // M x d
  std::vector<Matrix> attention;  // per head, M x M row-stochastic
  Matrix hidden;             // M x d, heads concatenated
  Matrix activation;         // M x d_a, tanh(hidden * additive_proj)
  Vector pooling_weights;    // M
  Vector user;               // d
};

// history: one row per clicked item. An empty history yields the zero vector.
UserEncoderTrace ForwardUser(const UserModelParams& params,
                             const Eigen::Ref<const Matrix>& history);

Vector EncodeUser(const UserModelParams& params,
                  const Eigen::Ref<const Matrix>& history);

// Back-propagates dL/du through a recorded forward pass. Parameter
// gradients are accumulated into `grad` (same shapes as params); the
// gradient w.r.t. the history rows is accumulated into `d_history`.
void BackwardUser(const UserModelParams& params, const UserEncoderTrace& trace,
                  const Eigen::Ref<const Vector>& d_user,
                  UserModelParams& grad, Matrix& d_history);

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_USER_ENCODER_H_
