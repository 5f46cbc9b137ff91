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

#include "recmodel/params.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"

namespace fedrec::recmodel {

void ModelDims::Validate() const {
  if (vocab_size == 0 || token_dim == 0 || news_dim == 0 || num_heads == 0 ||
      attention_dim == 0) {
    throw ConfigError("model dimensions must all be positive");
  }
  if (news_dim % num_heads != 0) {
    throw ConfigError("news_dim (" + std::to_string(news_dim) +
                      ") must be divisible by num_heads (" +
                      std::to_string(num_heads) + ")");
  }
}

std::vector<ParamSegment> LayoutOf(std::span<const ConstBlockRef> blocks) {
  std::vector<ParamSegment> out;
  size_t offset = 0;
  for (const auto& b : blocks) {
    out.push_back({b.name, offset, b.rows, b.cols});
    offset += b.rows * b.cols;
  }
  return out;
}

std::vector<double> FlattenBlocks(std::span<const ConstBlockRef> blocks) {
  size_t total = 0;
  for (const auto& b : blocks) total += b.rows * b.cols;
  std::vector<double> out;
  out.reserve(total);
  for (const auto& b : blocks) out.insert(out.end(), b.data, b.data + b.rows * b.cols);
  return out;
}

void AssignBlocks(std::span<const BlockRef> blocks,
                  std::span<const double> flat) {
  size_t total = 0;
  for (const auto& b : blocks) total += b.rows * b.cols;
  if (flat.size() != total) {
    throw InputError("flat parameter vector has " +
                     std::to_string(flat.size()) + " entries, layout needs " +
                     std::to_string(total));
  }
  size_t at = 0;
  for (const auto& b : blocks) {
    std::copy_n(flat.data() + at, b.rows * b.cols, b.data);
    at += b.rows * b.cols;
  }
}

namespace {

void FillUniform(double* data, size_t n, double scale, Rng& rng) {
  for (size_t i = 0; i < n; ++i) data[i] = UniformReal(rng, -scale, scale);
}

bool Finite(const double* data, size_t n) {
  return std::all_of(data, data + n, [](double x) { return std::isfinite(x); });
}

}  // namespace

UserModelParams UserModelParams::Zeros(const ModelDims& dims) {
  dims.Validate();
  UserModelParams p;
  const auto d = static_cast<Eigen::Index>(dims.news_dim);
  const auto da = static_cast<Eigen::Index>(dims.attention_dim);
  p.num_heads = dims.num_heads;
  p.query = Matrix::Zero(d, d);
  p.key = Matrix::Zero(d, d);
  p.value = Matrix::Zero(d, d);
  p.additive_proj = Matrix::Zero(d, da);
  p.additive_query = Vector::Zero(da);
  return p;
}

UserModelParams UserModelParams::RandomUniform(const ModelDims& dims,
                                               double scale, Rng& rng) {
  UserModelParams p = Zeros(dims);
  for (const auto& b : p.MutableBlocks()) {
    FillUniform(b.data, b.rows * b.cols, scale, rng);
  }
  return p;
}

std::vector<ConstBlockRef> UserModelParams::Blocks() const {
  const size_t d = news_dim(), da = attention_dim();
  return {{"self_attention.query", query.data(), d, d},
          {"self_attention.key", key.data(), d, d},
          {"self_attention.value", value.data(), d, d},
          {"additive_attention.proj", additive_proj.data(), d, da},
          {"additive_attention.query", additive_query.data(), 1, da}};
}

std::vector<BlockRef> UserModelParams::MutableBlocks() {
  const size_t d = news_dim(), da = attention_dim();
  return {{"self_attention.query", query.data(), d, d},
          {"self_attention.key", key.data(), d, d},
          {"self_attention.value", value.data(), d, d},
          {"additive_attention.proj", additive_proj.data(), d, da},
          {"additive_attention.query", additive_query.data(), 1, da}};
}

size_t UserModelParams::NumParams() const {
  const size_t d = news_dim(), da = attention_dim();
  return 3 * d * d + d * da + da;
}

std::vector<ParamSegment> UserModelParams::Layout() const {
  auto blocks = Blocks();
  return LayoutOf(blocks);
}

std::vector<double> UserModelParams::Flatten() const {
  auto blocks = Blocks();
  return FlattenBlocks(blocks);
}

void UserModelParams::AssignFlat(std::span<const double> flat) {
  auto blocks = MutableBlocks();
  AssignBlocks(blocks, flat);
}

bool UserModelParams::AllFinite() const {
  for (const auto& b : Blocks()) {
    if (!Finite(b.data, b.rows * b.cols)) return false;
  }
  return true;
}

NewsEncoderParams NewsEncoderParams::Zeros(const ModelDims& dims) {
  dims.Validate();
  NewsEncoderParams p;
  p.pooling = dims.pooling;
  p.token_embeddings = Matrix::Zero(static_cast<Eigen::Index>(dims.vocab_size),
                                    static_cast<Eigen::Index>(dims.token_dim));
  p.projection = Matrix::Zero(static_cast<Eigen::Index>(dims.token_dim),
                              static_cast<Eigen::Index>(dims.news_dim));
  p.attention_query = Vector::Zero(static_cast<Eigen::Index>(dims.news_dim));
  return p;
}

NewsEncoderParams NewsEncoderParams::RandomUniform(const ModelDims& dims,
                                                   double scale, Rng& rng) {
  NewsEncoderParams p = Zeros(dims);
  for (const auto& b : p.MutableBlocks()) {
    FillUniform(b.data, b.rows * b.cols, scale, rng);
  }
  return p;
}

std::vector<ConstBlockRef> NewsEncoderParams::Blocks() const {
  return {{"news_encoder.token_embeddings", token_embeddings.data(),
           vocab_size(), token_dim()},
          {"news_encoder.projection", projection.data(), token_dim(),
           news_dim()},
          {"news_encoder.attention_query", attention_query.data(), 1,
           news_dim()}};
}

std::vector<BlockRef> NewsEncoderParams::MutableBlocks() {
  return {{"news_encoder.token_embeddings", token_embeddings.data(),
           vocab_size(), token_dim()},
          {"news_encoder.projection", projection.data(), token_dim(),
           news_dim()},
          {"news_encoder.attention_query", attention_query.data(), 1,
           news_dim()}};
}

size_t NewsEncoderParams::NumParams() const {
  return vocab_size() * token_dim() + token_dim() * news_dim() + news_dim();
}

std::vector<ParamSegment> NewsEncoderParams::Layout() const {
  auto blocks = Blocks();
  return LayoutOf(blocks);
}

std::vector<double> NewsEncoderParams::Flatten() const {
  auto blocks = Blocks();
  return FlattenBlocks(blocks);
}

void NewsEncoderParams::AssignFlat(std::span<const double> flat) {
  auto blocks = MutableBlocks();
  AssignBlocks(blocks, flat);
}

bool NewsEncoderParams::AllFinite() const {
  for (const auto& b : Blocks()) {
    if (!Finite(b.data, b.rows * b.cols)) return false;
  }
  return true;
}

}  // namespace fedrec::recmodel
