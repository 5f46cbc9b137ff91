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

#ifndef FEDREC_FEDCORE_OPTIMIZER_H_
#define FEDREC_FEDCORE_OPTIMIZER_H_

#include <span>
#include <vector>

#include "recmodel/params.h"

namespace fedrec::fedcore {

struct OptimizerConfig {
  double learning_rate = 5e-5;  // eta
  double beta1 = 0.9;
  double beta2 = 0.99;
  double tau = 1e-8;
  // Adds the step instead of subtracting it. Audit only: it ascends the loss.
  bool add_step = false;

  // Throws ConfigError when a field is out of range.
  void Validate() const;
};

// First moment (delta) and second moment (v), laid out like the parameters.
struct AdamMoments {
  std::vector<double> first;
  std::vector<double> second;

  static AdamMoments Zeros(size_t n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  }
};

// One step of
//   delta <- b1 delta + (1 - b1) g
//   v     <- b2 v + (1 - b2) delta^2
//   theta <- theta - eta delta / sqrt(v + tau)
// without bias correction. Returns false and changes nothing when `grad`
// holds a non-finite value. Throws InputError on size mismatch.
bool AdamStep(std::span<double> params, AdamMoments& moments,
              std::span<const double> grad, const OptimizerConfig& config);

// The same step applied to the flat user model (server-side FedAdam).
bool FedAdamStep(recmodel::UserModelParams& params, AdamMoments& moments,
                 std::span<const double> grad, const OptimizerConfig& config);

// The same step applied to the flat news encoder.
bool AdamNewsStep(recmodel::NewsEncoderParams& params, AdamMoments& moments,
                  std::span<const double> grad, const OptimizerConfig& config);

}  // namespace fedrec::fedcore

#endif  // FEDREC_FEDCORE_OPTIMIZER_H_
