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

#ifndef FEDFRONT_HARNESS_METRICS_H_
#define FEDFRONT_HARNESS_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/nn/model.h"

namespace fedfront::harness {

struct ConfusionCounts {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&,
                         const ConfusionCounts&) = default;
};

struct Metrics {
  double accuracy = 0.0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// Recall and precision are 0 when their denominators are 0; f1 likewise.
Metrics MetricsFromCounts(const ConfusionCounts& c);

struct Evaluation {
  ConfusionCounts counts;
  Metrics metrics;
};

// Thresholded evaluation: predicted positive when forward(x) >= threshold.
Evaluation Evaluate(const nn::ModelParams& params, const Matrix& features,
                    const std::vector<double>& labels, double threshold = 0.5);

struct MetricsRow {
  std::string stage;
  double mu = 0.0;
  double sigma = 0.0;
  double clip = 0.0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  Metrics metrics;
  std::optional<ConfusionCounts> counts;  // in-memory only, not serialized
  bool failed = false;
  std::string error;
};

}  // namespace fedfront::harness

#endif  // FEDFRONT_HARNESS_METRICS_H_
