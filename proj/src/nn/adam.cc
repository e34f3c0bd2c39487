// Copyright 2026 The FedFront Authors
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

#include "fedfront/nn/adam.h"

#include <cmath>
#include <stdexcept>

namespace fedfront::nn {

void AdamStep(ModelParams& params, AdamState& state,
              std::span<const double> gradient, double lr) {
  const std::size_t n = params.size();
  if (gradient.size() != n) {
    throw std::invalid_argument("AdamStep: gradient length mismatch");
  }
  if (state.first_moment.empty() && state.step_count == 0) {
    state = AdamState(n);
  }
  if (state.first_moment.size() != n || state.second_moment.size() != n) {
    throw std::invalid_argument("AdamStep: moment length mismatch");
  }
  ++state.step_count;
  const double t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.beta1, t);
  const double bc2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    double g = gradient[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g * g;
    double m_hat = m / bc1;
    double v_hat = v / bc2;
    params.weights[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps_hat);
  }
}

void TrainingConfig::Validate() const {
  if (!(learning_rate >= 0.0)) {
    throw std::invalid_argument("learning rate must be nonnegative");
  }
  if (batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (local_epochs < 1) {
    throw std::invalid_argument("local epochs must be >= 1");
  }
}

}  // namespace fedfront::nn
