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

#include "recmodel/gradients.h"

#include <algorithm>

#include "common/error.h"
#include "common/random.h"
#include "recmodel/scoring.h"
#include "recmodel/user_encoder.h"

namespace fedrec::recmodel {
namespace {

Matrix GatherRows(const ReprTable& reprs, std::span<const ItemIndex> ids) {
  Matrix out(static_cast<Eigen::Index>(ids.size()),
             static_cast<Eigen::Index>(reprs.dim()));
  for (size_t i = 0; i < ids.size(); ++i) {
    auto row = reprs.Find(ids[i]);
    if (!row) {
      throw ProtocolError("no representation received for news item " +
                          std::to_string(ids[i]));
    }
    out.row(static_cast<Eigen::Index>(i)) =
        reprs.vectors().row(static_cast<Eigen::Index>(*row));
  }
  return out;
}

void CheckSample(const TrainingSample& s) {
  if (s.candidates.empty() || s.label_index >= s.candidates.size()) {
    throw InputError("training sample has no valid label");
  }
}

void AddTo(ReprGradients& grads, ItemIndex id,
           const Eigen::Ref<const Vector>& g) {
  auto [it, inserted] = grads.try_emplace(id, g);
  if (!inserted) it->second += g;
}

}  // namespace

double UserLoss(std::span<const TrainingSample> samples,
                const UserModelParams& params, const ReprTable& reprs) {
  if (samples.empty()) throw InputError("user loss of an empty sample set");
  double total = 0.0;
  for (const auto& s : samples) {
    CheckSample(s);
    Matrix hist = GatherRows(reprs, s.history);
    Vector u = EncodeUser(params, hist);
    Matrix cand = GatherRows(reprs, s.candidates);
    Vector scores = cand * u;
    total += SampleLoss(std::span<const double>(scores.data(), scores.size()),
                        s.label_index);
  }
  return total / static_cast<double>(samples.size());
}

LocalGradients ComputeLocalGradients(std::span<const TrainingSample> samples,
                                     const UserModelParams& params,
                                     const ReprTable& reprs,
                                     const DropoutOptions& dropout) {
  LocalGradients out;
  out.sample_count = samples.size();
  UserModelParams grad = params;
  grad.query.setZero();
  grad.key.setZero();
  grad.value.setZero();
  grad.additive_proj.setZero();
  grad.additive_query.setZero();
  if (samples.empty()) {
    out.user_grad = grad.Flatten();
    return out;
  }

  const double inv_n = 1.0 / static_cast<double>(samples.size());
  const double keep = 1.0 - dropout.rate;
  Rng drop_rng(dropout.seed);
  double total_loss = 0.0;

  for (const auto& s : samples) {
    CheckSample(s);
    Matrix hist = GatherRows(reprs, s.history);
    Matrix mask;
    if (dropout.rate > 0.0 && hist.size() > 0) {
      mask.resize(hist.rows(), hist.cols());
      for (Eigen::Index i = 0; i < mask.size(); ++i) {
        mask.data()[i] = UniformUnit(drop_rng) < keep ? 1.0 / keep : 0.0;
      }
      hist = (hist.array() * mask.array()).matrix();
    }
    UserEncoderTrace tr = ForwardUser(params, hist);
    Matrix cand = GatherRows(reprs, s.candidates);
    Vector scores = cand * tr.user;
    total_loss += SampleLoss(
        std::span<const double>(scores.data(), scores.size()), s.label_index);

    // d(-log p_label)/d score = p - onehot(label)
    Vector d_scores = SoftmaxVector(scores);
    d_scores(s.label_index) -= 1.0;
    d_scores *= inv_n;

    Vector d_user = cand.transpose() * d_scores;
    for (size_t c = 0; c < s.candidates.size(); ++c) {
      AddTo(out.repr_grads, s.candidates[c],
            d_scores(static_cast<Eigen::Index>(c)) * tr.user);
    }
    if (hist.rows() == 0) continue;
    Matrix d_hist = Matrix::Zero(hist.rows(), hist.cols());
    BackwardUser(params, tr, d_user, grad, d_hist);
    if (mask.size() > 0) d_hist = (d_hist.array() * mask.array()).matrix();
    for (size_t j = 0; j < s.history.size(); ++j) {
      AddTo(out.repr_grads, s.history[j],
            d_hist.row(static_cast<Eigen::Index>(j)).transpose());
    }
  }
  out.user_grad = grad.Flatten();
  out.loss = total_loss * inv_n;
  return out;
}

std::vector<ItemIndex> ReferencedItems(std::span<const TrainingSample> samples) {
  std::vector<ItemIndex> items;
  for (const auto& s : samples) {
    items.insert(items.end(), s.history.begin(), s.history.end());
    items.insert(items.end(), s.candidates.begin(), s.candidates.end());
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

}  // namespace fedrec::recmodel
