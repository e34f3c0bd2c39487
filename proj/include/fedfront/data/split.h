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

#ifndef FEDFRONT_DATA_SPLIT_H_
#define FEDFRONT_DATA_SPLIT_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/data/records.h"

namespace fedfront::data {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified shuffle split. The test side gets floor(test_fraction * n)
// rows, of which round(test_fraction * positives) are positive. Both sides
// come back in shuffled order. Throws DataError with fewer than two
// positives; std::invalid_argument when test_fraction is outside (0, 1).
SplitIndices StratifiedSplitIndices(const std::vector<int>& labels,
                                    double test_fraction, std::uint64_t seed);

struct RecordSplit {
  std::vector<RawRecord> train;
  std::vector<RawRecord> test;
};

RecordSplit StratifiedSplit(const std::vector<RawRecord>& records,
                            double test_fraction, std::uint64_t seed);

// One client's local dataset.
struct ClientPartition {
  std::size_t client_id = 0;
  Matrix features;
  std::vector<double> labels;

  std::size_t n_samples() const { return labels.size(); }
};

// Contiguous slices: the first num_clients - 1 partitions get
// floor(n / num_clients) rows, the last takes the remainder. With
// shuffle_seed set, rows are permuted first.
std::vector<ClientPartition> PartitionClients(
    const Matrix& features, const std::vector<double>& labels,
    std::size_t num_clients,
    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

}  // namespace fedfront::data

#endif  // FEDFRONT_DATA_SPLIT_H_
