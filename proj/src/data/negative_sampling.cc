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

#include "data/negative_sampling.h"

#include "common/error.h"

namespace fedrec::data {

std::vector<recmodel::TrainingSample> NegativeSample(const Impression& imp,
                                                     size_t k, Rng& rng) {
  if (imp.candidates.size() != imp.labels.size()) {
    throw InputError("impression candidates and labels differ in length");
  }
  std::vector<ItemIndex> negatives;
  for (size_t i = 0; i < imp.candidates.size(); ++i) {
    if (!imp.labels[i]) negatives.push_back(imp.candidates[i]);
  }
  std::vector<recmodel::TrainingSample> out;
  if (negatives.empty()) return out;
  for (size_t i = 0; i < imp.candidates.size(); ++i) {
    if (!imp.labels[i]) continue;
    recmodel::TrainingSample s;
    s.history = imp.history;
    s.label_index = 0;
    s.candidates.push_back(imp.candidates[i]);
    if (negatives.size() >= k) {
      // Partial Fisher-Yates over a copy.
      std::vector<ItemIndex> pool = negatives;
      for (size_t j = 0; j < k; ++j) {
        const size_t pick = j + UniformIndex(rng, pool.size() - j);
        std::swap(pool[j], pool[pick]);
        s.candidates.push_back(pool[j]);
      }
    } else {
      for (size_t j = 0; j < k; ++j) {
        s.candidates.push_back(negatives[UniformIndex(rng, negatives.size())]);
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<recmodel::TrainingSample> SampleBehavior(const Behavior& behavior,
                                                     size_t k, Rng& rng) {
  std::vector<recmodel::TrainingSample> out;
  for (const auto& imp : behavior.impressions) {
    auto samples = NegativeSample(imp, k, rng);
    out.insert(out.end(), std::make_move_iterator(samples.begin()),
               std::make_move_iterator(samples.end()));
  }
  return out;
}

}  // namespace fedrec::data
