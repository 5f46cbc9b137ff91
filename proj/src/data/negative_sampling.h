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

#ifndef FEDREC_DATA_NEGATIVE_SAMPLING_H_
#define FEDREC_DATA_NEGATIVE_SAMPLING_H_

#include <span>
#include <vector>

#include "common/random.h"
#include "data/corpus.h"
#include "recmodel/gradients.h"

namespace fedrec::data {

// One training sample per clicked candidate: the click at label index 0
// followed by `k` non-clicked candidates of the same impression. Negatives
// are drawn without replacement when at least `k` exist and with
// replacement otherwise. Impressions without negatives yield nothing.
std::vector<recmodel::TrainingSample> NegativeSample(const Impression& imp,
                                                     size_t k, Rng& rng);

std::vector<recmodel::TrainingSample> SampleBehavior(const Behavior& behavior,
                                                     size_t k, Rng& rng);

}  // namespace fedrec::data

#endif  // FEDREC_DATA_NEGATIVE_SAMPLING_H_
