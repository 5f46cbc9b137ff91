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

#include "recmodel/repr_table.h"

#include <algorithm>

#include "common/error.h"

namespace fedrec::recmodel {

ReprTable::ReprTable(std::vector<ItemIndex> ids, Matrix vectors)
    : ids_(std::move(ids)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(ids_.size()) != vectors_.rows()) {
    throw InputError("representation table: id count does not match rows");
  }
  for (size_t i = 1; i < ids_.size(); ++i) {
    if (ids_[i - 1] >= ids_[i]) {
      throw InputError("representation table ids must be strictly increasing");
    }
  }
  dense_ = ids_.empty() || ids_.back() + 1 == ids_.size();
}

ReprTable ReprTable::Dense(Matrix vectors) {
  std::vector<ItemIndex> ids(static_cast<size_t>(vectors.rows()));
  for (size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ItemIndex>(i);
  return ReprTable(std::move(ids), std::move(vectors));
}

std::optional<size_t> ReprTable::Find(ItemIndex id) const {
  if (dense_) {
    if (id < ids_.size()) return id;
    return std::nullopt;
  }
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<size_t>(it - ids_.begin());
}

Eigen::Map<const Vector> ReprTable::Get(ItemIndex id) const {
  auto row = Find(id);
  if (!row) {
    throw InputError("no representation for news item " + std::to_string(id));
  }
  return Eigen::Map<const Vector>(
      vectors_.data() + static_cast<Eigen::Index>(*row) * vectors_.cols(),
      vectors_.cols());
}

ReprTable ReprTable::Subset(std::span<const ItemIndex> ids) const {
  Matrix out(static_cast<Eigen::Index>(ids.size()), vectors_.cols());
  for (size_t i = 0; i < ids.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = Get(ids[i]).transpose();
  }
  return ReprTable(std::vector<ItemIndex>(ids.begin(), ids.end()),
                   std::move(out));
}

}  // namespace fedrec::recmodel
