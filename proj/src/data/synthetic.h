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

#ifndef FEDREC_DATA_SYNTHETIC_H_
#define FEDREC_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string>

#include "common/random.h"
#include "common/types.h"
#include "data/corpus.h"

namespace fedrec::data {

// Seeded generator of a learnable click task. Items and users get unit
// latent vectors clustered around topic centers; a user clicks an item with
// probability sigmoid((affinity - click_threshold) / noise), affinity =
// <user, item>. A positive threshold concentrates each user's clicks near
// its own latent direction.
// Item titles are "<topic word> <item word> <filler words>".
struct SyntheticSpec {
  size_t num_users = 1000;
  size_t num_items = 500;
  size_t latent_dim = 8;
  size_t num_topics = 10;
  double topic_spread = 0.3;  // latent noise around the topic center
  double noise = 0.1;         // 0 gives deterministic clicks
  double click_threshold = 0.7;
  size_t history_len = 20;    // clicks per user history
  size_t train_impressions = 8;
  size_t validation_impressions = 1;
  size_t test_impressions = 1;
  size_t impression_size = 5;
  size_t filler_vocab = 20;
  size_t filler_words = 2;
  uint64_t seed = 1;

  // Throws ConfigError on inconsistent sizes.
  void Validate() const;
};

struct SyntheticTruth {
  Matrix user_latents;  // num_users x latent_dim
  Matrix item_latents;  // num_items x latent_dim
  std::vector<uint32_t> item_topics;
};

struct SyntheticData {
  Dataset dataset;
  SyntheticTruth truth;
};

// Click probability for a given affinity. noise = 0 is a step at 0 with
// value 1/2 at the boundary.
double ClickProbability(double affinity, double noise);
bool DrawClick(double affinity, double noise, Rng& rng);

SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

// Writes a dataset as MIND-format behaviors.tsv and news.tsv. Training
// impressions are stamped on one day and evaluation impressions on the
// next, so LoadMind keeps training and evaluation rows apart.
void WriteMindTsv(const Dataset& dataset, const std::string& behaviors_path,
                  const std::string& news_path);

}  // namespace fedrec::data

#endif  // FEDREC_DATA_SYNTHETIC_H_
