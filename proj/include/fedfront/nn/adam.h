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

#ifndef FEDFRONT_NN_ADAM_H_
#define FEDFRONT_NN_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fedfront/nn/model.h"

namespace fedfront::nn {

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::int64_t step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_hat = 1e-8;

  AdamState() = default;
  explicit AdamState(std::size_t n)
      : first_moment(n, 0.0), second_moment(n, 0.0) {}
};

// One bias-corrected Adam update, in place.
void AdamStep(ModelParams& params, AdamState& state,
              std::span<const double> gradient, double lr);

struct TrainingConfig {
  double learning_rate = 0.001;
  std::size_t batch_size = 32;
  std::size_t local_epochs = 5;

  void Validate() const;
};

}  // namespace fedfront::nn

#endif  // FEDFRONT_NN_ADAM_H_
