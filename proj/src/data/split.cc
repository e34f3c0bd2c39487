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

#include "fedfront/data/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fedfront/common/error.h"
#include "fedfront/common/rng.h"

namespace fedfront::data {

SplitIndices StratifiedSplitIndices(const std::vector<int>& labels,
                                    double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie in (0, 1)");
  }
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    (labels[i] == 1 ? pos : neg).push_back(i);
  }
  if (pos.size() < 2) {
    throw DataError("stratified split needs at least 2 positive records");
  }
  const std::size_t n = labels.size();
  const auto n_test =
      static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n)));
  auto test_pos = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(pos.size())));
  test_pos = std::clamp<std::size_t>(test_pos, 1, pos.size() - 1);
  if (n_test < test_pos || n_test - test_pos > neg.size() || n_test >= n) {
    throw DataError("dataset too small for the requested test fraction");
  }
  const std::size_t test_neg = n_test - test_pos;

  Rng rng = MakeRng(seed, {0x5911});
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  SplitIndices out;
  out.test.insert(out.test.end(), pos.begin(), pos.begin() + test_pos);
  out.test.insert(out.test.end(), neg.begin(), neg.begin() + test_neg);
  out.train.insert(out.train.end(), pos.begin() + test_pos, pos.end());
  out.train.insert(out.train.end(), neg.begin() + test_neg, neg.end());
  std::shuffle(out.train.begin(), out.train.end(), rng);
  std::shuffle(out.test.begin(), out.test.end(), rng);
  return out;
}

RecordSplit StratifiedSplit(const std::vector<RawRecord>& records,
                            double test_fraction, std::uint64_t seed) {
  std::vector<int> labels(records.size());
  std::transform(records.begin(), records.end(), labels.begin(),
                 [](const RawRecord& r) { return r.stroke; });
  SplitIndices idx = StratifiedSplitIndices(labels, test_fraction, seed);
  RecordSplit out;
  out.train.reserve(idx.train.size());
  out.test.reserve(idx.test.size());
  for (std::size_t i : idx.train) out.train.push_back(records[i]);
  for (std::size_t i : idx.test) out.test.push_back(records[i]);
  return out;
}

std::vector<ClientPartition> PartitionClients(
    const Matrix& features, const std::vector<double>& labels,
    std::size_t num_clients, std::optional<std::uint64_t> shuffle_seed) {
  const std::size_t n = features.rows();
  if (labels.size() != n) {
    throw std::invalid_argument("label count does not match feature rows");
  }
  if (num_clients < 1 || n < num_clients) {
    throw std::invalid_argument("need 1 <= num_clients <= rows");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed) {
    Rng rng = MakeRng(*shuffle_seed, {0x9a27});
    std::shuffle(order.begin(), order.end(), rng);
  }
  const std::size_t per_client = n / num_clients;
  std::vector<ClientPartition> parts;
  parts.reserve(num_clients);
  for (std::size_t c = 0; c < num_clients; ++c) {
    std::size_t start = c * per_client;
    std::size_t end = (c + 1 == num_clients) ? n : start + per_client;
    std::span<const std::size_t> slice(order.data() + start, end - start);
    ClientPartition p;
    p.client_id = c;
    p.features = features.SelectRows(slice);
    for (std::size_t i : slice) p.labels.push_back(labels[i]);
    parts.push_back(std::move(p));
  }
  return parts;
}

}  // namespace fedfront::data
