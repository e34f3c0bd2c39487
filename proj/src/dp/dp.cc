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

#include "fedfront/dp/dp.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fedfront::dp {

void DpConfig::Validate() const {
  if (!(noise_multiplier >= 0.0)) {
    throw std::invalid_argument("noise multiplier must be >= 0");
  }
  if (!(max_grad_norm > 0.0)) {
    throw std::invalid_argument("max grad norm must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

double L2Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> ClipGradient(std::span<const double> g, double max_norm) {
  if (!(max_norm > 0.0)) throw std::invalid_argument("clip norm must be > 0");
  std::vector<double> out(g.begin(), g.end());
  double norm = L2Norm(g);
  if (norm > max_norm) {
    double scale = max_norm / norm;
    for (double& x : out) x *= scale;
  }
  return out;
}

std::vector<double> PrivatizeBatch(const Matrix& per_sample_grads,
                                   const DpConfig& cfg, Rng& rng) {
  cfg.Validate();
  const std::size_t b = per_sample_grads.rows();
  if (b == 0) throw std::invalid_argument("PrivatizeBatch: empty batch");
  const std::size_t p = per_sample_grads.cols();
  std::vector<double> sum(p, 0.0);
  for (std::size_t r = 0; r < b; ++r) {
    auto g = per_sample_grads.row(r);
    double norm = L2Norm(g);
    double scale = norm > cfg.max_grad_norm ? cfg.max_grad_norm / norm : 1.0;
    for (std::size_t c = 0; c < p; ++c) sum[c] += g[c] * scale;
  }
  if (cfg.noise_multiplier > 0.0) {
    std::normal_distribution<double> noise(
        0.0, cfg.noise_multiplier * cfg.max_grad_norm);
    for (double& s : sum) s += noise(rng);
  }
  const double inv_b = 1.0 / static_cast<double>(b);
  for (double& s : sum) s *= inv_b;
  return sum;
}

double SampleRate(std::size_t batch_size, std::size_t n_samples) {
  if (batch_size < 1 || batch_size > n_samples) {
    throw std::invalid_argument("sample rate needs 1 <= batch_size <= n");
  }
  return static_cast<double>(batch_size) / static_cast<double>(n_samples);
}

}  // namespace fedfront::dp
