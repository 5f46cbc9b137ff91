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

#ifndef FEDREC_DATA_CORPUS_H_
#define FEDREC_DATA_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "common/types.h"
#include "recmodel/news_encoder.h"

namespace fedrec::data {

// Lowercased whitespace tokens.
std::vector<std::string> TokenizeWords(std::string_view text);

// Word to index map. Index 0 is reserved for unknown words.
class Vocabulary {
 public:
  static constexpr uint32_t kUnknown = 0;
  static constexpr std::string_view kUnknownToken = "[UNK]";

  Vocabulary();
  // Keeps the max_size - 1 most frequent words; ties break lexically.
  static Vocabulary Build(const std::vector<std::vector<std::string>>& docs,
                          size_t max_size);

  uint32_t Lookup(std::string_view word) const;
  const std::string& Word(uint32_t index) const { return words_.at(index); }
  size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, uint32_t> index_;
};

struct NewsRecord {
  std::string id;
  std::string title;
};

// Item catalog. Items are dense-indexed 0..n-1 in insertion order;
// external ids are kept for I/O.
class Corpus {
 public:
  Corpus() = default;
  // Builds the vocabulary from all titles. Titles are truncated to
  // max_title_len tokens; an empty title becomes the single unknown token.
  static Corpus Build(const std::vector<NewsRecord>& records,
                      size_t vocab_cap, size_t max_title_len);

  size_t size() const { return contents_.size(); }
  std::optional<ItemIndex> Find(std::string_view external_id) const;
  const std::string& ExternalId(ItemIndex id) const {
    return external_ids_.at(id);
  }
  const std::vector<recmodel::NewsContent>& contents() const {
    return contents_;
  }
  const Vocabulary& vocabulary() const { return vocab_; }

 private:
  std::vector<std::string> external_ids_;
  std::unordered_map<std::string, ItemIndex> index_;
  std::vector<recmodel::NewsContent> contents_;
  Vocabulary vocab_;
};

// One logged impression. `history` holds the user's clicks before it,
// most recent last.
struct Impression {
  std::string id;
  std::string user_id;
  std::vector<ItemIndex> history;
  std::vector<ItemIndex> candidates;
  std::vector<uint8_t> labels;  // 1 = clicked

  size_t PositiveCount() const;
};

// A client's locally stored behaviors: its training impressions.
struct Behavior {
  std::string user_id;
  std::vector<ItemIndex> history;  // as of the first training impression
  std::vector<Impression> impressions;
};

struct LoadStats {
  size_t news_rows = 0;
  size_t unique_news = 0;
  size_t behavior_rows = 0;
  size_t unique_users = 0;
  size_t unique_impressions = 0;
  size_t duplicate_impressions = 0;
  size_t malformed_rows = 0;
  size_t unknown_item_rows = 0;
};

struct Dataset {
  Corpus corpus;
  std::vector<Behavior> clients;
  std::vector<Impression> validation;
  std::vector<Impression> test;
  LoadStats stats;
};

}  // namespace fedrec::data

#endif  // FEDREC_DATA_CORPUS_H_
