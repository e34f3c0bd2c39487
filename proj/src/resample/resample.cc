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

#include "fedfront/resample/resample.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace fedfront::resample {
namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Index of the nearest other row, ties to the lower index.
std::vector<std::size_t> NearestNeighbor(const Matrix& x) {
  const std::size_t n = x.rows();
  std::vector<std::size_t> nn(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double d = SquaredDistance(x.row(i), x.row(j));
      // j > i: strict comparison keeps the earlier (lower) index on ties.
      if (d < best[i]) {
        best[i] = d;
        nn[i] = j;
      }
      if (d < best[j]) {
        best[j] = d;
        nn[j] = i;
      }
    }
  }
  return nn;
}

}  // namespace

NeighborIndex BuildKnn(const Matrix& features, std::size_t k) {
  const std::size_t n = features.rows();
  if (n <= k) {
    throw std::invalid_argument("BuildKnn: need more rows than k");
  }
  NeighborIndex index;
  index.k = k;
  index.neighbor_lists.resize(n);
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      cand.emplace_back(SquaredDistance(features.row(i), features.row(j)), j);
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<long>(k),
                      cand.end());
    auto& list = index.neighbor_lists[i];
    list.reserve(k);
    for (std::size_t m = 0; m < k; ++m) list.push_back(cand[m].second);
  }
  return index;
}

ClassCounts CountClasses(const std::vector<double>& labels) {
  ClassCounts c;
  for (double y : labels) (y == 1.0 ? c.positive : c.negative)++;
  return c;
}

SmoteResult Smote(const Matrix& features, const std::vector<double>& labels,
                  std::size_t k, Rng& rng) {
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("Smote: label count does not match rows");
  }
  SmoteResult result{{features, labels}, {}};
  ClassCounts counts = CountClasses(labels);
  const double minority_label = counts.positive <= counts.negative ? 1.0 : 0.0;
  const std::size_t n_min = std::min(counts.positive, counts.negative);
  const std::size_t n_maj = std::max(counts.positive, counts.negative);
  if (n_min <= 1 || n_min == n_maj || k == 0) return result;

  std::vector<std::size_t> minority;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == minority_label) minority.push_back(i);
  }
  const std::size_t k_eff = std::min(k, n_min - 1);
  NeighborIndex knn = BuildKnn(features.SelectRows(minority), k_eff);

  const std::size_t deficit = n_maj - n_min;
  std::uniform_int_distribution<std::size_t> pick(0, n_min * k_eff - 1);
  std::uniform_real_distribution<double> step(0.0, 1.0);
  std::vector<double> row(features.cols());
  result.origins.reserve(deficit);
  for (std::size_t s = 0; s < deficit; ++s) {
    std::size_t draw = pick(rng);
    std::size_t base_local = draw / k_eff;
    std::size_t nn_local = knn.neighbor_lists[base_local][draw % k_eff];
    double lambda = step(rng);
    std::size_t base = minority[base_local];
    std::size_t neighbor = minority[nn_local];
    auto xb = features.row(base);
    auto xn = features.row(neighbor);
    for (std::size_t c = 0; c < row.size(); ++c) {
      row[c] = xb[c] + lambda * (xn[c] - xb[c]);
    }
    result.data.features.AppendRow(row);
    result.data.labels.push_back(minority_label);
    result.origins.push_back({base, neighbor, lambda});
  }
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> TomekLinks(
    const Matrix& features, const std::vector<double>& labels) {
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("TomekLinks: label count does not match rows");
  }
  std::vector<std::pair<std::size_t, std::size_t>> links;
  if (features.rows() < 2) return links;
  std::vector<std::size_t> nn = NearestNeighbor(features);
  for (std::size_t a = 0; a < nn.size(); ++a) {
    std::size_t b = nn[a];
    if (a < b && nn[b] == a && labels[a] != labels[b]) links.emplace_back(a, b);
  }
  return links;
}

SmoteTomekResult SmoteTomek(const Matrix& features,
                            const std::vector<double>& labels, Rng& rng,
                            std::size_t k) {
  SmoteTomekResult out;
  out.report.before = CountClasses(labels);
  SmoteResult smoted = Smote(features, labels, k, rng);
  out.report.synthetic_added = smoted.origins.size();

  const Resampled& over = smoted.data;
  std::vector<bool> drop(over.labels.size(), false);
  for (auto [a, b] : TomekLinks(over.features, over.labels)) {
    drop[a] = true;
    drop[b] = true;
  }
  std::vector<std::size_t> keep;
  keep.reserve(drop.size());
  for (std::size_t i = 0; i < drop.size(); ++i) {
    if (!drop[i]) keep.push_back(i);
  }
  out.report.tomek_removed = drop.size() - keep.size();
  out.data.features = over.features.SelectRows(keep);
  out.data.labels.reserve(keep.size());
  for (std::size_t i : keep) out.data.labels.push_back(over.labels[i]);
  out.report.after = CountClasses(out.data.labels);
  return out;
}

}  // namespace fedfront::resample
