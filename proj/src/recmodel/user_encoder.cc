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

#include "recmodel/user_encoder.h"

#include <cmath>

#include "common/error.h"
#include "recmodel/scoring.h"

namespace fedrec::recmodel {
namespace {

void RowSoftmaxInPlace(Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Vector row = m.row(i).transpose();
    m.row(i) = SoftmaxVector(row).transpose();
  }
}

}  // namespace

UserEncoderTrace ForwardUser(const UserModelParams& params,
                             const Eigen::Ref<const Matrix>& history) {
  const auto d = static_cast<Eigen::Index>(params.news_dim());
  UserEncoderTrace tr;
  tr.user = Vector::Zero(d);
  if (history.rows() == 0) return tr;
  if (history.cols() != d) {
    throw InputError("history representations have dimension " +
                     std::to_string(history.cols()) + ", model expects " +
                     std::to_string(d));
  }
  const auto heads = static_cast<Eigen::Index>(params.num_heads);
  const Eigen::Index dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  tr.input = history;
  tr.query = tr.input * params.query;
  tr.key = tr.input * params.key;
  tr.value = tr.input * params.value;
  tr.hidden.resize(history.rows(), d);
  tr.attention.resize(static_cast<size_t>(heads));
  for (Eigen::Index k = 0; k < heads; ++k) {
    Matrix s = scale * tr.query.middleCols(k * dh, dh) *
               tr.key.middleCols(k * dh, dh).transpose();
    RowSoftmaxInPlace(s);
    tr.hidden.middleCols(k * dh, dh) = s * tr.value.middleCols(k * dh, dh);
    tr.attention[static_cast<size_t>(k)] = std::move(s);
  }
  tr.activation = (tr.hidden * params.additive_proj).array().tanh().matrix();
  tr.pooling_weights = SoftmaxVector(tr.activation * params.additive_query);
  tr.user = tr.hidden.transpose() * tr.pooling_weights;
  return tr;
}

Vector EncodeUser(const UserModelParams& params,
                  const Eigen::Ref<const Matrix>& history) {
  return ForwardUser(params, history).user;
}

void BackwardUser(const UserModelParams& params, const UserEncoderTrace& tr,
                  const Eigen::Ref<const Vector>& d_user,
                  UserModelParams& grad, Matrix& d_history) {
  const Eigen::Index m = tr.input.rows();
  if (m == 0) return;
  const auto d = static_cast<Eigen::Index>(params.news_dim());
  const auto heads = static_cast<Eigen::Index>(params.num_heads);
  const Eigen::Index dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  // u = H^T alpha
  Matrix d_hidden = tr.pooling_weights * d_user.transpose();
  Vector d_alpha = tr.hidden * d_user;
  Vector d_logits = SoftmaxBackward(tr.pooling_weights, d_alpha);

  // logits = tanh(H Wa) qa
  grad.additive_query.noalias() += tr.activation.transpose() * d_logits;
  Matrix d_act = d_logits * params.additive_query.transpose();
  Matrix d_pre =
      (d_act.array() * (1.0 - tr.activation.array().square())).matrix();
  grad.additive_proj.noalias() += tr.hidden.transpose() * d_pre;
  d_hidden.noalias() += d_pre * params.additive_proj.transpose();

  Matrix d_q(m, d), d_k(m, d), d_v(m, d);
  for (Eigen::Index k = 0; k < heads; ++k) {
    const Matrix& a = tr.attention[static_cast<size_t>(k)];
    auto d_head = d_hidden.middleCols(k * dh, dh);
    Matrix d_a = d_head * tr.value.middleCols(k * dh, dh).transpose();
    d_v.middleCols(k * dh, dh) = a.transpose() * d_head;
    // Row-wise softmax backward.
    Vector row_dot = (d_a.array() * a.array()).rowwise().sum();
    Matrix d_s = (a.array() * (d_a.colwise() - row_dot).array()).matrix();
    d_q.middleCols(k * dh, dh) = scale * d_s * tr.key.middleCols(k * dh, dh);
    d_k.middleCols(k * dh, dh) =
        scale * d_s.transpose() * tr.query.middleCols(k * dh, dh);
  }
  grad.query.noalias() += tr.input.transpose() * d_q;
  grad.key.noalias() += tr.input.transpose() * d_k;
  grad.value.noalias() += tr.input.transpose() * d_v;
  d_history.noalias() += d_q * params.query.transpose() +
                         d_k * params.key.transpose() +
                         d_v * params.value.transpose();
}

}  // namespace fedrec::recmodel
