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

#ifndef FEDREC_RECMODEL_REPR_TABLE_H_
#define FEDREC_RECMODEL_REPR_TABLE_H_

#include <optional>
#include <span>
#include <vector>

#include "common/types.h"

namespace fedrec::recmodel {

// Item representations keyed by item index: the server's full news table
// or the union-set subset a client receives. Ids are sorted and unique;
// row i of vectors() belongs to ids()[i].
class ReprTable {
 public:
  ReprTable() = default;
  ReprTable(std::vector<ItemIndex> ids, Matrix vectors);
  // Rows are items 0..n-1.
  static ReprTable Dense(Matrix vectors);

  std::optional<size_t> Find(ItemIndex id) const;
  bool Contains(ItemIndex id) const { return Find(id).has_value(); }
  // Throws InputError if absent.
  Eigen::Map<const Vector> Get(ItemIndex id) const;
  // Throws InputError if any id is absent. `ids` must be sorted.
  ReprTable Subset(std::span<const ItemIndex> ids) const;

  const std::vector<ItemIndex>& ids() const { return ids_; }
  const Matrix& vectors() const { return vectors_; }
  size_t size() const { return ids_.size(); }
  size_t dim() const { return static_cast<size_t>(vectors_.cols()); }

 private:
  std::vector<ItemIndex> ids_;
  Matrix vectors_;
  bool dense_ = false;
};

}  // namespace fedrec::recmodel

#endif  // FEDREC_RECMODEL_REPR_TABLE_H_
