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

#include "recmodel/scoring.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"

namespace fedrec::recmodel {

double Score(const Eigen::Ref<const Vector>& user,
             const Eigen::Ref<const Vector>& candidate) {
  if (user.size() != candidate.size()) {
    throw InputError("score: dimension mismatch (" +
                     std::to_string(user.size()) + " vs " +
                     std::to_string(candidate.size()) + ")");
  }
  return user.dot(candidate);
}

std::vector<double> Softmax(std::span<const double> logits) {
  if (logits.empty()) return {};
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double z = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - m);
    z += out[i];
  }
  for (double& v : out) v /= z;
  return out;
}

Vector SoftmaxVector(const Eigen::Ref<const Vector>& logits) {
  if (logits.size() == 0) return Vector();
  Vector e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

Vector SoftmaxBackward(const Eigen::Ref<const Vector>& y,
                       const Eigen::Ref<const Vector>& dy) {
  return (y.array() * (dy.array() - y.dot(dy))).matrix();
}

double SampleLoss(std::span<const double> scores, size_t label_index) {
  if (label_index >= scores.size()) {
    throw InputError("label index " + std::to_string(label_index) +
                     " out of range for " + std::to_string(scores.size()) +
                     " candidates");
  }
  const double m = *std::max_element(scores.begin(), scores.end());
  const double s_label = scores[label_index];
  if (s_label == m) {
    // log1p keeps precision when the positive dominates.
    double rest = 0.0;
    bool skipped = false;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (i == label_index && !skipped) {
        skipped = true;
        continue;
      }
      rest += std::exp(scores[i] - m);
    }
    return std::log1p(rest);
  }
  double z = 0.0;
  for (double s : scores) z += std::exp(s - m);
  return m + std::log(z) - s_label;
}

}  // namespace fedrec::recmodel
