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

#ifndef FEDREC_RECMODEL_NEWS_ENCODER_H_
#define FEDREC_RECMODEL_NEWS_ENCODER_H_

#include <map>
#include <span>
#include <vector>

#include "common/types.h"
#include "recmodel/params.h"

namespace fedrec::recmodel {

// Tokenized content of one news item. `tokens` is non-empty and every entry
// is a valid vocabulary index.
struct NewsContent {
  ItemIndex id = 0;
  std::vector<uint32_t> tokens;
};

// Per-item gradients of a scalar loss w.r.t. news representations.
using ReprGradients = std::map<ItemIndex, Vector>;

// Maps content to a d-dimensional representation.
//   kMean:      n = P^T * mean_t(E[t])
//   kAttention: h_t = P^T E[t], a = softmax(q . h_t), n = sum_t a_t h_t
// Throws InputError on empty titles or token ids outside the vocabulary.
Vector EncodeNews(const NewsEncoderParams& params, const NewsContent& content);

// Accumulates sum_i <g_i, d n_i / d theta> over all items in `repr_grads`
// and returns it in NewsEncoderParams::Flatten() order. `contents` must be
// sorted by id and contain every key of `repr_grads`.
std::vector<double> NewsEncoderBackward(const NewsEncoderParams& params,
                                        std::span<const NewsContent> contents,
                                        const ReprGradients& repr_grads);

// Finds an item in an id-sorted content list; throws InputError if absent.
const NewsContent& FindContent(std::span<const NewsContent> contents,
                               ItemIndex id);

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_NEWS_ENCODER_H_
