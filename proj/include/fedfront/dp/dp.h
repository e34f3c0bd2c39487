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

#ifndef FEDFRONT_DP_DP_H_
#define FEDFRONT_DP_DP_H_

#include <span>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/common/rng.h"

namespace fedfront::dp {

struct DpConfig {
  double noise_multiplier = 1.0;  // sigma
  double max_grad_norm = 1.0;     // C
  double delta = 1e-5;

  void Validate() const;
};

double L2Norm(std::span<const double> v);

// g / max(1, ||g|| / C).
std::vector<double> ClipGradient(std::span<const double> g, double max_norm);

// (sum_i clip(g_i, C) + z) / |B| with z ~ N(0, sigma^2 C^2 I). Rows of
// `per_sample_grads` are the g_i. No rng draws are consumed when sigma = 0.
std::vector<double> PrivatizeBatch(const Matrix& per_sample_grads,
                                   const DpConfig& cfg, Rng& rng);

// batch_size / n_samples. Throws std::invalid_argument unless
// 1 <= batch_size <= n_samples.
double SampleRate(std::size_t batch_size, std::size_t n_samples);

}  // namespace fedfront::dp

#endif  // FEDFRONT_DP_DP_H_
