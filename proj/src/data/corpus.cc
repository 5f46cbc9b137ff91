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

#include "data/corpus.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "common/error.h"

namespace fedrec::data {

std::vector<std::string> TokenizeWords(std::string_view text) {
  std::vector<std::string> out;
  std::string word;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!word.empty()) out.push_back(std::move(word));
      word.clear();
    } else {
      word.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

Vocabulary::Vocabulary() {
  words_.emplace_back(kUnknownToken);
  index_.emplace(std::string(kUnknownToken), kUnknown);
}

Vocabulary Vocabulary::Build(const std::vector<std::vector<std::string>>& docs,
                             size_t max_size) {
  if (max_size == 0) throw InputError("vocabulary size must be positive");
  std::map<std::string, size_t> counts;
  for (const auto& doc : docs) {
    for (const auto& w : doc) {
      if (w != kUnknownToken) ++counts[w];
    }
  }
  std::vector<std::pair<std::string, size_t>> ranked(counts.begin(),
                                                     counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     return a.second > b.second;
                   });
  Vocabulary vocab;
  for (const auto& [word, count] : ranked) {
    if (vocab.size() >= max_size) break;
    vocab.index_.emplace(word, static_cast<uint32_t>(vocab.words_.size()));
    vocab.words_.push_back(word);
  }
  return vocab;
}

uint32_t Vocabulary::Lookup(std::string_view word) const {
  auto it = index_.find(std::string(word));
  return it == index_.end() ? kUnknown : it->second;
}

Corpus Corpus::Build(const std::vector<NewsRecord>& records, size_t vocab_cap,
                     size_t max_title_len) {
  if (max_title_len == 0) throw InputError("max title length must be positive");
  Corpus corpus;
  std::vector<std::vector<std::string>> docs;
  for (const auto& r : records) {
    if (corpus.index_.count(r.id)) continue;
    corpus.index_.emplace(r.id, static_cast<ItemIndex>(docs.size()));
    corpus.external_ids_.push_back(r.id);
    auto words = TokenizeWords(r.title);
    if (words.size() > max_title_len) words.resize(max_title_len);
    docs.push_back(std::move(words));
  }
  corpus.vocab_ = Vocabulary::Build(docs, vocab_cap);
  corpus.contents_.resize(docs.size());
  for (size_t i = 0; i < docs.size(); ++i) {
    auto& content = corpus.contents_[i];
    content.id = static_cast<ItemIndex>(i);
    for (const auto& w : docs[i]) {
      content.tokens.push_back(corpus.vocab_.Lookup(w));
    }
    if (content.tokens.empty()) content.tokens.push_back(Vocabulary::kUnknown);
  }
  return corpus;
}

std::optional<ItemIndex> Corpus::Find(std::string_view external_id) const {
  auto it = index_.find(std::string(external_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t Impression::PositiveCount() const {
  return static_cast<size_t>(std::count(labels.begin(), labels.end(), 1));
}

}  // namespace fedrec::data
