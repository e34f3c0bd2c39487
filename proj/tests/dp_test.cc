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

#include <cmath>
#include <vector>

#include "fedfront/common/rng.h"
#include "fedfront/dp/dp.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fedfront::dp {
namespace {

TEST(ClipGradientTest, ScalesDownOnlyWhenAboveNorm) {
  std::vector<double> g = {3.0, 4.0};
  EXPECT_DOUBLE_EQ(L2Norm(g), 5.0);
  std::vector<double> clipped = ClipGradient(g, 1.0);
  EXPECT_DOUBLE_EQ(clipped[0], 0.6);
  EXPECT_DOUBLE_EQ(clipped[1], 0.8);
  EXPECT_EQ(ClipGradient(g, 5.0), g);
  EXPECT_EQ(ClipGradient(g, 7.5), g);
  std::vector<double> zero(4, 0.0);
  EXPECT_EQ(ClipGradient(zero, 0.1), zero);
  EXPECT_THROW(ClipGradient(g, 0.0), std::invalid_argument);
}

TEST(ClipGradientTest, NormContractOnRandomVectors) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix m = fedfront::testing::RandomMatrix(1, 50, rng, 0.5);
    std::vector<double> g(m.row(0).begin(), m.row(0).end());
    for (double c : {0.1, 1.0, 10.0}) {
      std::vector<double> out = ClipGradient(g, c);
      double n = L2Norm(g);
      double expected_norm = std::min(n, c);
      EXPECT_NEAR(L2Norm(out), expected_norm, 1e-12 * expected_norm);
      if (n <= c) EXPECT_EQ(out, g);
      // Direction is preserved.
      for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(out[i] * n, g[i] * L2Norm(out), 1e-12);
      }
    }
  }
}

TEST(PrivatizeBatchTest, NoNoiseGivesMeanOfClippedRows) {
  Rng data_rng(2);
  Matrix grads = fedfront::testing::RandomMatrix(6, 9, data_rng, 2.0);
  DpConfig cfg{0.0, 1.5, 1e-5};
  Rng rng(3);
  const Rng before = rng;
  std::vector<double> out = PrivatizeBatch(grads, cfg, rng);
  EXPECT_EQ(rng, before);
  std::vector<double> expected(9, 0.0);
  for (std::size_t r = 0; r < 6; ++r) {
    std::vector<double> c = ClipGradient(grads.row(r), 1.5);
    for (std::size_t i = 0; i < 9; ++i) expected[i] += c[i] / 6.0;
  }
  for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(out[i], expected[i], 1e-15);
}

TEST(PrivatizeBatchTest, NoiseStdMatchesCalibration) {
  // 4 rows of zero gradient, 1000 coordinates, 100 batches: 1e5 draws.
  const std::size_t batch = 4, dim = 1000, reps = 100;
  DpConfig cfg{1.3, 0.7, 1e-5};
  Matrix grads(batch, dim);
  Rng rng(11);
  double sum = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < reps; ++k) {
    for (double v : PrivatizeBatch(grads, cfg, rng)) {
      sum += v;
      sq += v * v;
    }
  }
  const double n = static_cast<double>(dim * reps);
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  const double target = 1.3 * 0.7 / static_cast<double>(batch);
  EXPECT_LE(std::abs(sd / target - 1.0), 0.02);
  EXPECT_LE(std::abs(mean), 5.0 * target / std::sqrt(n));
}

TEST(PrivatizeBatchTest, SameStreamSameOutput) {
  Rng data_rng(1);
  Matrix grads = fedfront::testing::RandomMatrix(3, 20, data_rng);
  DpConfig cfg;
  Rng a(5), b(5);
  EXPECT_EQ(PrivatizeBatch(grads, cfg, a), PrivatizeBatch(grads, cfg, b));
}

TEST(PrivatizeBatchTest, RejectsBadInput) {
  Rng rng(1);
  EXPECT_THROW(PrivatizeBatch(Matrix(0, 3), DpConfig{}, rng),
               std::invalid_argument);
  EXPECT_THROW(PrivatizeBatch(Matrix(2, 3), DpConfig{-1.0, 1.0, 1e-5}, rng),
               std::invalid_argument);
  EXPECT_THROW(PrivatizeBatch(Matrix(2, 3), DpConfig{1.0, 0.0, 1e-5}, rng),
               std::invalid_argument);
}

TEST(DpConfigTest, Validate) {
  EXPECT_NO_THROW((DpConfig{0.0, 1.0, 1e-5}.Validate()));
  EXPECT_THROW((DpConfig{1.0, -1.0, 1e-5}.Validate()), std::invalid_argument);
  EXPECT_THROW((DpConfig{1.0, 1.0, 0.0}.Validate()), std::invalid_argument);
  EXPECT_THROW((DpConfig{1.0, 1.0, 1.0}.Validate()), std::invalid_argument);
  EXPECT_THROW((DpConfig{std::nan(""), 1.0, 1e-5}.Validate()),
               std::invalid_argument);
}

TEST(SampleRateTest, RatioAndBounds) {
  EXPECT_DOUBLE_EQ(SampleRate(32, 408), 32.0 / 408.0);
  EXPECT_DOUBLE_EQ(SampleRate(10, 10), 1.0);
  EXPECT_THROW(SampleRate(0, 10), std::invalid_argument);
  EXPECT_THROW(SampleRate(11, 10), std::invalid_argument);
}

}  // namespace
}  // namespace fedfront::dp
