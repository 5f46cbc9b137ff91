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

#include "recmodel/news_encoder.h"

#include <algorithm>

#include "common/error.h"
#include "recmodel/scoring.h"

namespace fedrec::recmodel {
namespace {

void CheckTokens(const NewsEncoderParams& params, const NewsContent& content) {
  if (content.tokens.empty()) {
    throw InputError("news item " + std::to_string(content.id) +
                     " has no tokens");
  }
  for (uint32_t t : content.tokens) {
    if (t >= params.vocab_size()) {
      throw InputError("token index " + std::to_string(t) +
                       " out of range for vocabulary of size " +
                       std::to_string(params.vocab_size()));
    }
  }
}

// Projected token vectors, one row per token (T x d).
Matrix ProjectTokens(const NewsEncoderParams& params,
                     const NewsContent& content) {
  const auto t = static_cast<Eigen::Index>(content.tokens.size());
  Matrix emb(t, params.token_embeddings.cols());
  for (Eigen::Index i = 0; i < t; ++i) {
    emb.row(i) = params.token_embeddings.row(content.tokens[i]);
  }
  return emb * params.projection;
}

}  // namespace

const NewsContent& FindContent(std::span<const NewsContent> contents,
                               ItemIndex id) {
  if (id < contents.size() && contents[id].id == id) return contents[id];
  auto it = std::lower_bound(
      contents.begin(), contents.end(), id,
      [](const NewsContent& c, ItemIndex v) { return c.id < v; });
  if (it == contents.end() || it->id != id) {
    throw InputError("no content for news item " + std::to_string(id));
  }
  return *it;
}

Vector EncodeNews(const NewsEncoderParams& params, const NewsContent& content) {
  CheckTokens(params, content);
  if (params.pooling == NewsPooling::kMean) {
    Vector mean = Vector::Zero(params.token_embeddings.cols());
    for (uint32_t t : content.tokens) {
      mean += params.token_embeddings.row(t).transpose();
    }
    mean /= static_cast<double>(content.tokens.size());
    return params.projection.transpose() * mean;
  }
  Matrix h = ProjectTokens(params, content);
  Vector logits = h * params.attention_query;
  Vector alpha = SoftmaxVector(logits);
  return h.transpose() * alpha;
}

std::vector<double> NewsEncoderBackward(const NewsEncoderParams& params,
                                        std::span<const NewsContent> contents,
                                        const ReprGradients& repr_grads) {
  Matrix d_emb = Matrix::Zero(params.token_embeddings.rows(),
                              params.token_embeddings.cols());
  Matrix d_proj = Matrix::Zero(params.projection.rows(), params.projection.cols());
  Vector d_query = Vector::Zero(params.attention_query.size());
  const auto d = static_cast<Eigen::Index>(params.news_dim());

  for (const auto& [id, grad] : repr_grads) {
    if (grad.size() != d) {
      throw InputError("representation gradient has wrong dimension");
    }
    const NewsContent& content = FindContent(contents, id);
    CheckTokens(params, content);
    const double inv_len = 1.0 / static_cast<double>(content.tokens.size());

    if (params.pooling == NewsPooling::kMean) {
      Vector mean = Vector::Zero(params.token_embeddings.cols());
      for (uint32_t t : content.tokens) {
        mean += params.token_embeddings.row(t).transpose();
      }
      mean *= inv_len;
      d_proj.noalias() += mean * grad.transpose();
      Vector d_mean = params.projection * grad;
      for (uint32_t t : content.tokens) {
        d_emb.row(t) += inv_len * d_mean.transpose();
      }
      continue;
    }

    const auto len = static_cast<Eigen::Index>(content.tokens.size());
    Matrix emb(len, params.token_embeddings.cols());
    for (Eigen::Index i = 0; i < len; ++i) {
      emb.row(i) = params.token_embeddings.row(content.tokens[i]);
    }
    Matrix h = emb * params.projection;
    Vector alpha = SoftmaxVector(h * params.attention_query);
    // n = h^T alpha
    Matrix d_h = alpha * grad.transpose();
    Vector d_alpha = h * grad;
    Vector d_logits = SoftmaxBackward(alpha, d_alpha);
    d_query.noalias() += h.transpose() * d_logits;
    d_h.noalias() += d_logits * params.attention_query.transpose();
    d_proj.noalias() += emb.transpose() * d_h;
    Matrix d_rows = d_h * params.projection.transpose();
    for (Eigen::Index i = 0; i < len; ++i) {
      d_emb.row(content.tokens[i]) += d_rows.row(i);
    }
  }

  std::vector<double> flat;
  flat.reserve(params.NumParams());
  flat.insert(flat.end(), d_emb.data(), d_emb.data() + d_emb.size());
  flat.insert(flat.end(), d_proj.data(), d_proj.data() + d_proj.size());
  flat.insert(flat.end(), d_query.data(), d_query.data() + d_query.size());
  return flat;
}

}  // namespace fedrec::recmodel
