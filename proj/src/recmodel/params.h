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

#ifndef FEDREC_RECMODEL_PARAMS_H_
#define FEDREC_RECMODEL_PARAMS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "common/random.h"
#include "common/types.h"

namespace fedrec::recmodel {

enum class NewsPooling {
  kMean,       // mean of token embeddings, then projection
  kAttention,  // projection per token, then additive attention pooling
};

// Shapes of the desk-scale model.
struct ModelDims {
  size_t vocab_size = 1000;
  size_t token_dim = 64;
  size_t news_dim = 400;      // d
  size_t num_heads = 4;       // h; news_dim % num_heads == 0
  size_t attention_dim = 200; // d_a of the additive attention
  NewsPooling pooling = NewsPooling::kMean;

  // Throws ConfigError on zero sizes or news_dim not divisible by heads.
  void Validate() const;
};

// A named block inside a flat parameter vector. Blocks are row-major.
struct ParamSegment {
  std::string name;
  size_t offset = 0;
  size_t rows = 0;
  size_t cols = 0;
  size_t size() const { return rows * cols; }
};

// Mutable/const views over one parameter block.
struct BlockRef {
  const char* name;
  double* data;
  size_t rows;
  size_t cols;
};
struct ConstBlockRef {
  const char* name;
  const double* data;
  size_t rows;
  size_t cols;
};

// Shared flat (de)serialization over a fixed list of blocks.
std::vector<ParamSegment> LayoutOf(std::span<const ConstBlockRef> blocks);
std::vector<double> FlattenBlocks(std::span<const ConstBlockRef> blocks);
void AssignBlocks(std::span<const BlockRef> blocks,
                  std::span<const double> flat);

// User model: NRMS-style multi-head self-attention followed by additive
// attention pooling.
//
// Flat layout, in order, each block row-major:
//   self_attention.query    d x d
//   self_attention.key      d x d
//   self_attention.value    d x d
//   additive_attention.proj d x d_a
//   additive_attention.query d_a
// Head k owns columns [k*d/h, (k+1)*d/h) of the query/key/value blocks.
struct UserModelParams {
  size_t num_heads = 1;
  Matrix query;
  Matrix key;
  Matrix value;
  Matrix additive_proj;
  Vector additive_query;

  static UserModelParams Zeros(const ModelDims& dims);
  static UserModelParams RandomUniform(const ModelDims& dims, double scale,
                                       Rng& rng);

  size_t news_dim() const { return static_cast<size_t>(query.rows()); }
  size_t attention_dim() const {
    return static_cast<size_t>(additive_query.size());
  }
  size_t NumParams() const;
  std::vector<ParamSegment> Layout() const;
  std::vector<double> Flatten() const;
  void AssignFlat(std::span<const double> flat);
  bool AllFinite() const;

 private:
  std::vector<ConstBlockRef> Blocks() const;
  std::vector<BlockRef> MutableBlocks();
};

// Server-side news encoder.
//
// Flat layout: token_embeddings (|V| x d_tok), projection (d_tok x d),
// attention_query (d). The attention query only receives gradient under
// NewsPooling::kAttention.
struct NewsEncoderParams {
  NewsPooling pooling = NewsPooling::kMean;
  Matrix token_embeddings;
  Matrix projection;
  Vector attention_query;

  static NewsEncoderParams Zeros(const ModelDims& dims);
  static NewsEncoderParams RandomUniform(const ModelDims& dims, double scale,
                                         Rng& rng);

  size_t vocab_size() const {
    return static_cast<size_t>(token_embeddings.rows());
  }
  size_t token_dim() const { return static_cast<size_t>(projection.rows()); }
  size_t news_dim() const { return static_cast<size_t>(projection.cols()); }
  size_t NumParams() const;
  std::vector<ParamSegment> Layout() const;
  std::vector<double> Flatten() const;
  void AssignFlat(std::span<const double> flat);
  bool AllFinite() const;

 private:
  std::vector<ConstBlockRef> Blocks() const;
  std::vector<BlockRef> MutableBlocks();
};

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_PARAMS_H_
