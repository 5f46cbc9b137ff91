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

#include "fedcore/aggregation.h"

#include <algorithm>

#include "common/error.h"

namespace fedrec::fedcore {

std::vector<double> FlattenUpload(const recmodel::LocalGradients& grads,
                                  std::span<const ItemIndex> union_ids,
                                  size_t dim) {
  const double w = static_cast<double>(grads.sample_count);
  std::vector<double> out;
  out.reserve(grads.user_grad.size() + union_ids.size() * dim + 1);
  for (double g : grads.user_grad) out.push_back(w * g);
  const size_t base = out.size();
  out.resize(base + union_ids.size() * dim, 0.0);
  for (const auto& [id, g] : grads.repr_grads) {
    auto it = std::lower_bound(union_ids.begin(), union_ids.end(), id);
    if (it == union_ids.end() || *it != id) {
      throw ProtocolError("gradient for an item outside the union set");
    }
    if (static_cast<size_t>(g.size()) != dim) {
      throw InputError("representation gradient has the wrong dimension");
    }
    double* row = out.data() + base + (it - union_ids.begin()) * dim;
    for (size_t j = 0; j < dim; ++j) row[j] = w * g[j];
  }
  out.push_back(w);
  return out;
}

std::vector<double> FlattenWholeModelUpload(
    std::span<const double> user_grad, std::span<const double> encoder_grad,
    double weight) {
  std::vector<double> out;
  out.reserve(user_grad.size() + encoder_grad.size() + 1);
  for (double g : user_grad) out.push_back(weight * g);
  for (double g : encoder_grad) out.push_back(weight * g);
  out.push_back(weight);
  return out;
}

AggregatedUpdate SplitSum(std::span<const double> sum, size_t user_params) {
  if (sum.size() < user_params + 1) {
    throw InputError("aggregate shorter than the user model");
  }
  AggregatedUpdate u;
  u.user_grad_sum.assign(sum.begin(), sum.begin() + user_params);
  u.repr_grad_sum.assign(sum.begin() + user_params, sum.end() - 1);
  u.weight_sum = sum.back();
  return u;
}

std::optional<NormalizedUpdate> Normalize(const AggregatedUpdate& update) {
  if (!(update.weight_sum > 0)) return std::nullopt;
  NormalizedUpdate n;
  n.user_grad = update.user_grad_sum;
  n.repr_grad = update.repr_grad_sum;
  for (double& g : n.user_grad) g /= update.weight_sum;
  for (double& g : n.repr_grad) g /= update.weight_sum;
  return n;
}

recmodel::ReprGradients ToReprGradients(std::span<const double> flat,
                                        std::span<const ItemIndex> union_ids,
                                        size_t dim) {
  if (flat.size() != union_ids.size() * dim) {
    throw InputError("representation gradient block has the wrong size");
  }
  recmodel::ReprGradients out;
  for (size_t i = 0; i < union_ids.size(); ++i) {
    out.emplace(union_ids[i],
                Eigen::Map<const Vector>(flat.data() + i * dim,
                                         static_cast<Eigen::Index>(dim)));
  }
  return out;
}

}  // namespace fedrec::fedcore
