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

#include <algorithm>
#include <cmath>
#include <set>

#include "fedfront/common/rng.h"
#include "fedfront/resample/resample.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fedfront::resample {
namespace {

using fedfront::testing::RandomMatrix;

Matrix Points(std::initializer_list<std::vector<double>> rows) {
  Matrix m(0, rows.begin()->size());
  for (const auto& r : rows) m.AppendRow(r);
  return m;
}

double Dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// O(n^2) reference: nearest other row, ties to the lower index.
std::size_t NaiveNearest(const Matrix& x, std::size_t i) {
  std::size_t best = i == 0 ? 1 : 0;
  for (std::size_t j = 0; j < x.rows(); ++j) {
    if (j == i) continue;
    if (Dist2(x.row(i), x.row(j)) < Dist2(x.row(i), x.row(best))) best = j;
  }
  return best;
}

TEST(BuildKnnTest, OrderedByDistanceWithLowerIndexTies) {
  Matrix x = Points({{0.0}, {1.0}, {-1.0}, {3.0}, {0.5}});
  NeighborIndex idx = BuildKnn(x, 3);
  EXPECT_EQ(idx.neighbor_lists[0], (std::vector<std::size_t>{4, 1, 2}));
  // Row 4 at 0.5 is equidistant from 0 and 1.
  EXPECT_EQ(idx.neighbor_lists[4], (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(BuildKnn(x, 5), std::invalid_argument);
}

TEST(BuildKnnTest, MatchesSortedBruteForce) {
  Rng rng(3);
  Matrix x = RandomMatrix(40, 4, rng);
  NeighborIndex idx = BuildKnn(x, 6);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < x.rows(); ++j) {
      if (j != i) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return Dist2(x.row(i), x.row(a)) < Dist2(x.row(i), x.row(b));
    });
    order.resize(6);
    EXPECT_EQ(idx.neighbor_lists[i], order) << "row " << i;
  }
}

TEST(SmoteTest, BalancesClassesWithPointsOnSegments) {
  Rng data_rng(10);
  Matrix x = RandomMatrix(60, 5, data_rng);
  std::vector<double> y(60, 0.0);
  for (std::size_t i = 0; i < 60; i += 6) y[i] = 1.0;
  Rng rng(11);
  SmoteResult r = Smote(x, y, kSmoteNeighbors, rng);
  EXPECT_EQ(r.origins.size(), 40u);
  EXPECT_EQ(CountClasses(r.data.labels), (ClassCounts{50, 50}));
  for (std::size_t r0 = 0; r0 < 60; ++r0) {
    EXPECT_TRUE(std::equal(x.row(r0).begin(), x.row(r0).end(),
                           r.data.features.row(r0).begin()));
  }

  NeighborIndex minority_knn = [&] {
    std::vector<std::size_t> minority;
    for (std::size_t i = 0; i < 60; ++i) {
      if (y[i] == 1.0) minority.push_back(i);
    }
    return BuildKnn(x.SelectRows(minority), kSmoteNeighbors);
  }();
  for (std::size_t s = 0; s < r.origins.size(); ++s) {
    const SyntheticOrigin& o = r.origins[s];
    EXPECT_EQ(y[o.base], 1.0);
    EXPECT_EQ(y[o.neighbor], 1.0);
    const auto& nbrs = minority_knn.neighbor_lists[o.base / 6];
    EXPECT_NE(std::find(nbrs.begin(), nbrs.end(), o.neighbor / 6), nbrs.end());
    EXPECT_GE(o.lambda, 0.0);
    EXPECT_LT(o.lambda, 1.0);

    // Recover lambda from the row and check the residual off the segment.
    auto p = r.data.features.row(60 + s);
    auto a = x.row(o.base);
    auto b = x.row(o.neighbor);
    double num = 0.0, den = 0.0;
    for (std::size_t c = 0; c < 5; ++c) {
      num += (p[c] - a[c]) * (b[c] - a[c]);
      den += (b[c] - a[c]) * (b[c] - a[c]);
    }
    double lambda = num / den;
    EXPECT_NEAR(lambda, o.lambda, 1e-12);
    for (std::size_t c = 0; c < 5; ++c) {
      EXPECT_NEAR(p[c], a[c] + lambda * (b[c] - a[c]), 1e-12);
    }
  }
}

TEST(SmoteTest, NeighborCountShrinksWithSmallMinority) {
  Matrix x = Points({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {10, 10},
                     {11, 10}, {12, 12}});
  std::vector<double> y = {0, 0, 0, 0, 0, 1, 1, 1};
  Rng rng(1);
  SmoteResult r = Smote(x, y, kSmoteNeighbors, rng);
  EXPECT_EQ(r.origins.size(), 2u);
  for (const auto& o : r.origins) {
    EXPECT_GE(o.base, 5u);
    EXPECT_GE(o.neighbor, 5u);
    EXPECT_NE(o.base, o.neighbor);
  }
}

TEST(SmoteTest, DegenerateInputsPassThrough) {
  Matrix x = Points({{0.0}, {1.0}, {2.0}, {3.0}});
  Rng rng(1);
  std::vector<double> one_positive = {0, 0, 0, 1};
  EXPECT_TRUE(Smote(x, one_positive, 5, rng).origins.empty());
  std::vector<double> balanced = {0, 1, 0, 1};
  EXPECT_TRUE(Smote(x, balanced, 5, rng).origins.empty());
  std::vector<double> short_labels = {0, 1};
  EXPECT_THROW(Smote(x, short_labels, 5, rng), std::invalid_argument);
}

TEST(SmoteTest, SameSeedSameRows) {
  Rng data_rng(4);
  Matrix x = RandomMatrix(30, 3, data_rng);
  std::vector<double> y(30, 0.0);
  for (std::size_t i = 0; i < 30; i += 5) y[i] = 1.0;
  Rng a(9), b(9), c(10);
  EXPECT_EQ(Smote(x, y, 5, a).data.features, Smote(x, y, 5, b).data.features);
  EXPECT_NE(Smote(x, y, 5, c).data.features, Smote(x, y, 5, a).data.features);
}

TEST(TomekLinksTest, MutualNearestOppositeLabels) {
  Matrix x = Points({{0.0}, {0.1}, {5.0}, {5.2}, {9.0}, {9.05}});
  std::vector<double> y = {0, 1, 0, 0, 1, 0};
  auto links = TomekLinks(x, y);
  ASSERT_EQ(links.size(), 2u);
  EXPECT_EQ(links[0], (std::pair<std::size_t, std::size_t>{0, 1}));
  EXPECT_EQ(links[1], (std::pair<std::size_t, std::size_t>{4, 5}));
}

TEST(TomekLinksTest, NonMutualPairIsNotALink) {
  // 1's nearest is 2, but 0's nearest is 1: no mutual opposite pair.
  Matrix x = Points({{0.0}, {1.0}, {1.5}});
  std::vector<double> y = {1, 0, 0};
  EXPECT_TRUE(TomekLinks(x, y).empty());
}

TEST(TomekLinksTest, MatchesNaiveOracleOnRandomClouds) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    Matrix x = RandomMatrix(120, 3, rng);
    std::vector<double> y = fedfront::testing::RandomLabels(120, rng);
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t a = 0; a < x.rows(); ++a) {
      std::size_t b = NaiveNearest(x, a);
      if (a < b && NaiveNearest(x, b) == a && y[a] != y[b]) {
        expected.emplace(a, b);
      }
    }
    auto links = TomekLinks(x, y);
    EXPECT_EQ(std::set(links.begin(), links.end()), expected);
  }
}

TEST(SmoteTomekTest, ReportIsConsistent) {
  Rng data_rng(21);
  Matrix x = RandomMatrix(200, 4, data_rng);
  std::vector<double> y(200, 0.0);
  for (std::size_t i = 0; i < 200; i += 10) y[i] = 1.0;
  Rng rng(5);
  SmoteTomekResult r = SmoteTomek(x, y, rng);
  const ResampleReport& rep = r.report;
  EXPECT_EQ(rep.before, (ClassCounts{180, 20}));
  EXPECT_EQ(rep.synthetic_added, 160u);
  EXPECT_EQ(rep.tomek_removed % 2, 0u);
  EXPECT_EQ(rep.after.total(), 360u - rep.tomek_removed);
  EXPECT_EQ(rep.after.negative, rep.after.positive);
  EXPECT_EQ(rep.after, CountClasses(r.data.labels));
  EXPECT_EQ(r.data.features.rows(), r.data.labels.size());
  EXPECT_TRUE(TomekLinks(r.data.features, r.data.labels).empty() ||
              rep.tomek_removed > 0);
}

TEST(SmoteTomekTest, SeparatedClustersLoseNothing) {
  Rng data_rng(2);
  Matrix x(0, 2);
  std::vector<double> y;
  for (int i = 0; i < 40; ++i) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool pos = i < 8;
    x.AppendRow(std::vector<double>{u(data_rng) + (pos ? 100.0 : 0.0),
                                    u(data_rng)});
    y.push_back(pos ? 1.0 : 0.0);
  }
  Rng rng(3);
  SmoteTomekResult r = SmoteTomek(x, y, rng);
  EXPECT_EQ(r.report.tomek_removed, 0u);
  EXPECT_EQ(r.report.after, (ClassCounts{32, 32}));
}

}  // namespace
}  // namespace fedfront::resample
