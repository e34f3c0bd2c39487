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

#ifndef FEDFRONT_RESAMPLE_RESAMPLE_H_
#define FEDFRONT_RESAMPLE_RESAMPLE_H_

#include <cstddef>
#include <utility>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/common/rng.h"

namespace fedfront::resample {

// Exact k nearest neighbours under Euclidean distance. Each list excludes
// the row itself and is sorted by ascending distance, ties to lower index.
struct NeighborIndex {
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> neighbor_lists;
};

// Brute force. Throws std::invalid_argument when rows <= k.
NeighborIndex BuildKnn(const Matrix& features, std::size_t k);

inline constexpr std::size_t kSmoteNeighbors = 5;

// Provenance of one synthetic row: x = x[base] + lambda * (x[neighbor] -
// x[base]), indices into the input matrix.
struct SyntheticOrigin {
  std::size_t base = 0;
  std::size_t neighbor = 0;
  double lambda = 0.0;
};

struct Resampled {
  Matrix features;
  std::vector<double> labels;
};

struct SmoteResult {
  Resampled data;
  std::vector<SyntheticOrigin> origins;  // one per appended row
};

// Oversamples the minority class until both classes have equal counts.
// Originals keep their positions; synthetics are appended. A minority of
// size <= 1 (or a balanced input) passes through unchanged. k is capped at
// minority - 1.
SmoteResult Smote(const Matrix& features, const std::vector<double>& labels,
                  std::size_t k, Rng& rng);

// Opposite-label pairs (a, b), a < b, that are each other's single nearest
// neighbour. Sorted by a.
std::vector<std::pair<std::size_t, std::size_t>> TomekLinks(
    const Matrix& features, const std::vector<double>& labels);

struct ClassCounts {
  std::size_t negative = 0;
  std::size_t positive = 0;
  std::size_t total() const { return negative + positive; }
  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

ClassCounts CountClasses(const std::vector<double>& labels);

struct ResampleReport {
  ClassCounts before;
  std::size_t synthetic_added = 0;
  std::size_t tomek_removed = 0;
  ClassCounts after;
};

struct SmoteTomekResult {
  Resampled data;
  ResampleReport report;
};

// SMOTE, then deletion of both members of every Tomek link found on the
// oversampled set.
SmoteTomekResult SmoteTomek(const Matrix& features,
                            const std::vector<double>& labels, Rng& rng,
                            std::size_t k = kSmoteNeighbors);

}  // namespace fedfront::resample

#endif  // FEDFRONT_RESAMPLE_RESAMPLE_H_
