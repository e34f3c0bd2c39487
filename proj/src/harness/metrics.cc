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

#include "fedfront/harness/metrics.h"

#include <stdexcept>

namespace fedfront::harness {

Metrics MetricsFromCounts(const ConfusionCounts& c) {
  Metrics m;
  const double n = static_cast<double>(c.total());
  if (n > 0) m.accuracy = static_cast<double>(c.tp + c.tn) / n;
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

Evaluation Evaluate(const nn::ModelParams& params, const Matrix& features,
                    const std::vector<double>& labels, double threshold) {
  if (features.rows() == 0) throw std::invalid_argument("empty test set");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  std::vector<double> probs = nn::Forward(params, features);
  if (labels.size() != probs.size()) {
    throw std::invalid_argument("label count does not match test rows");
  }
  Evaluation ev;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    bool pred = probs[i] >= threshold;
    bool truth = labels[i] == 1.0;
    if (pred && truth) ++ev.counts.tp;
    else if (pred) ++ev.counts.fp;
    else if (truth) ++ev.counts.fn;
    else ++ev.counts.tn;
  }
  ev.metrics = MetricsFromCounts(ev.counts);
  return ev;
}

}  // namespace fedfront::harness
