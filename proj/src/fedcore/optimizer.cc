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

#include "fedcore/optimizer.h"

#include <cmath>

#include "common/error.h"

namespace fedrec::fedcore {

void OptimizerConfig::Validate() const {
  if (!(learning_rate > 0)) throw ConfigError("learning_rate must be positive");
  if (!(beta1 >= 0 && beta1 < 1)) throw ConfigError("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0 && beta2 < 1)) throw ConfigError("beta2 must lie in [0, 1)");
  if (!(tau > 0)) throw ConfigError("tau must be positive");
}

bool AdamStep(std::span<double> params, AdamMoments& moments,
              std::span<const double> grad, const OptimizerConfig& config) {
  const size_t n = params.size();
  if (grad.size() != n || moments.first.size() != n ||
      moments.second.size() != n) {
    throw InputError("optimizer state does not match the parameter layout");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) return false;
  }
  const double sign = config.add_step ? 1.0 : -1.0;
  for (size_t i = 0; i < n; ++i) {
    double& d = moments.first[i];
    double& v = moments.second[i];
    d = config.beta1 * d + (1.0 - config.beta1) * grad[i];
    v = config.beta2 * v + (1.0 - config.beta2) * d * d;
    params[i] += sign * config.learning_rate * d / std::sqrt(v + config.tau);
  }
  return true;
}

bool FedAdamStep(recmodel::UserModelParams& params, AdamMoments& moments,
                 std::span<const double> grad, const OptimizerConfig& config) {
  auto flat = params.Flatten();
  if (!AdamStep(flat, moments, grad, config)) return false;
  params.AssignFlat(flat);
  return true;
}

bool AdamNewsStep(recmodel::NewsEncoderParams& params, AdamMoments& moments,
                  std::span<const double> grad, const OptimizerConfig& config) {
  auto flat = params.Flatten();
  if (!AdamStep(flat, moments, grad, config)) return false;
  params.AssignFlat(flat);
  return true;
}

}  // namespace fedrec::fedcore
