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
#include <limits>
#include <numeric>

#include "fedfront/common/rng.h"
#include "fedfront/fl/federation.h"
#include "fedfront/nn/model.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fedfront::fl {
namespace {

using nn::ModelArchitecture;
using nn::ModelParams;

// Labels follow the sign of the first feature, with a few flips.
data::ClientPartition MakePartition(std::size_t id, std::size_t n,
                                    std::uint64_t seed) {
  Rng rng(seed);
  data::ClientPartition p;
  p.client_id = id;
  p.features = fedfront::testing::RandomMatrix(n, 15, rng);
  std::bernoulli_distribution flip(0.1);
  for (std::size_t r = 0; r < n; ++r) {
    double y = p.features(r, 0) > 0.0 ? 1.0 : 0.0;
    p.labels.push_back(flip(rng) ? 1.0 - y : y);
  }
  return p;
}

std::vector<data::ClientPartition> MakePartitions(
    std::vector<std::size_t> sizes) {
  std::vector<data::ClientPartition> parts;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    parts.push_back(MakePartition(i, sizes[i], 100 + i));
  }
  return parts;
}

ClientConfig SmallConfig(double sigma, double clip, double mu) {
  ClientConfig cfg;
  cfg.training.batch_size = 8;
  cfg.training.local_epochs = 2;
  cfg.training.learning_rate = 0.01;
  cfg.dp = {sigma, clip, 1e-5};
  cfg.proximal_mu = mu;
  return cfg;
}

// Plain DP-SGD client: shuffle, per-sample gradients, clip and noise, Adam.
ModelParams PlainDpSgdClient(const ModelParams& start,
                             const data::ClientPartition& data,
                             const ClientConfig& cfg, Rng& rng) {
  ModelParams w = start;
  nn::AdamState adam(w.size());
  const std::size_t n = data.n_samples();
  const std::size_t b = std::min(cfg.training.batch_size, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t e = 0; e < cfg.training.local_epochs; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s = 0; s < n; s += b) {
      std::vector<std::size_t> idx(order.begin() + s,
                                   order.begin() + std::min(n, s + b));
      std::vector<double> y;
      for (std::size_t i : idx) y.push_back(data.labels[i]);
      Matrix g = nn::PerSampleGradients(w, data.features.SelectRows(idx), y,
                                        nullptr);
      nn::AdamStep(w, adam, dp::PrivatizeBatch(g, cfg.dp, rng),
                   cfg.training.learning_rate);
    }
  }
  return w;
}

TEST(ClientUpdateTest, ZeroMuIsBitIdenticalToPlainDpSgd) {
  data::ClientPartition part = MakePartition(0, 45, 1);
  ModelParams global = nn::InitModel(ModelArchitecture::Default(), 3);
  for (double sigma : {0.0, 1.0}) {
    ClientConfig cfg = SmallConfig(sigma, 1.0, 0.0);
    Rng a(77), b(77);
    ClientUpdate update = RunClientUpdate(global, part, cfg, a);
    ModelParams plain = PlainDpSgdClient(global, part, cfg, b);
    EXPECT_EQ(update.params.weights, plain.weights) << "sigma " << sigma;
    EXPECT_EQ(a, b);
  }
}

TEST(ClientUpdateTest, AccountantDeltaAndBatchClamp) {
  data::ClientPartition part = MakePartition(0, 45, 1);
  ModelParams global = nn::InitModel(ModelArchitecture::Default(), 3);
  ClientConfig cfg = SmallConfig(1.3, 1.0, 0.0);
  Rng rng(1);
  ClientUpdate u = RunClientUpdate(global, part, cfg, rng);
  EXPECT_EQ(u.n_samples, 45u);
  EXPECT_EQ(u.accountant_delta.noise_multiplier, 1.3);
  EXPECT_DOUBLE_EQ(u.accountant_delta.sample_rate, 8.0 / 45.0);
  EXPECT_EQ(u.accountant_delta.steps, 2 * 6);
  EXPECT_FALSE(u.batch_clamped);
  EXPECT_TRUE(u.params.AllFinite());

  cfg.training.batch_size = 64;
  u = RunClientUpdate(global, part, cfg, rng);
  EXPECT_TRUE(u.batch_clamped);
  EXPECT_DOUBLE_EQ(u.accountant_delta.sample_rate, 1.0);
  EXPECT_EQ(u.accountant_delta.steps, 2);
}

TEST(ClientUpdateTest, RejectsBadInput) {
  ModelParams global = nn::InitModel(ModelArchitecture::Default(), 3);
  ClientConfig cfg = SmallConfig(1.0, 1.0, 0.0);
  Rng rng(1);
  data::ClientPartition empty;
  empty.features = Matrix(0, 15);
  EXPECT_THROW(RunClientUpdate(global, empty, cfg, rng), std::invalid_argument);
  data::ClientPartition narrow;
  narrow.features = Matrix(4, 3);
  narrow.labels.assign(4, 0.0);
  EXPECT_THROW(RunClientUpdate(global, narrow, cfg, rng),
               std::invalid_argument);
  cfg.proximal_mu = -0.1;
  EXPECT_THROW(RunClientUpdate(global, MakePartition(0, 10, 1), cfg, rng),
               std::invalid_argument);
}

TEST(ProximalTest, GradientMatchesPenaltyFiniteDifference) {
  ModelParams w = nn::InitModel(ModelArchitecture::Default(), 1);
  ModelParams g = nn::InitModel(ModelArchitecture::Default(), 2);
  const double mu = 0.3;
  std::vector<double> grad = ProximalGradient(w, g, mu);
  for (std::size_t i : {0u, 17u, 1500u, 3136u}) {
    ModelParams plus = w, minus = w;
    plus.weights[i] += 1e-6;
    minus.weights[i] -= 1e-6;
    double fd = (ProximalPenalty(plus, g, mu) - ProximalPenalty(minus, g, mu)) /
                2e-6;
    EXPECT_NEAR(fd, grad[i], 1e-7);
  }
  EXPECT_EQ(ProximalPenalty(w, w, mu), 0.0);
  ModelParams other(ModelArchitecture{{15, 4, 1},
                                      {nn::Activation::kRelu,
                                       nn::Activation::kSigmoid}});
  EXPECT_THROW(ProximalGradient(w, other, mu), std::invalid_argument);
}

TEST(ProximalTest, LargeMuLimitsClientDrift) {
  data::ClientPartition part = MakePartition(0, 60, 4);
  ModelParams global = nn::InitModel(ModelArchitecture::Default(), 5);
  auto drift = [&](double mu) {
    ClientConfig cfg = SmallConfig(0.0, 1e6, mu);
    cfg.training.local_epochs = 5;
    Rng rng(9);
    ClientUpdate u = RunClientUpdate(global, part, cfg, rng);
    return 2.0 * ProximalPenalty(u.params, global, 1.0);
  };
  EXPECT_LT(drift(5.0), drift(0.0));
}

TEST(AggregateTest, MatchesBruteForceWeightedMean) {
  Rng rng(31);
  std::uniform_int_distribution<std::size_t> count(1, 500);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t k = 1 + trial % 7;
    std::vector<ModelParams> params;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < k; ++i) {
      params.push_back(nn::InitModel(ModelArchitecture::Default(),
                                     1000 * trial + i));
      sizes.push_back(count(rng));
    }
    std::vector<WeightedParams> in;
    for (std::size_t i = 0; i < k; ++i) in.push_back({&params[i], sizes[i]});
    ModelParams agg = Aggregate(in);
    double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
    for (std::size_t j = 0; j < agg.size(); ++j) {
      double mean = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        mean += sizes[i] * params[i].weights[j];
      }
      mean /= total;
      ASSERT_NEAR(agg.weights[j], mean, 1e-12);
    }
  }
}

TEST(AggregateTest, StaysInsideCoordinateHull) {
  std::vector<ModelParams> params;
  for (std::uint64_t s = 0; s < 5; ++s) {
    params.push_back(nn::InitModel(ModelArchitecture::Default(), s));
  }
  std::vector<WeightedParams> in;
  for (std::size_t i = 0; i < params.size(); ++i) {
    in.push_back({&params[i], 10 + 37 * i});
  }
  ModelParams agg = Aggregate(in);
  const double slack = 4 * std::numeric_limits<double>::epsilon();
  for (std::size_t j = 0; j < agg.size(); ++j) {
    double lo = params[0].weights[j], hi = lo;
    for (const auto& p : params) {
      lo = std::min(lo, p.weights[j]);
      hi = std::max(hi, p.weights[j]);
    }
    EXPECT_GE(agg.weights[j], lo - slack * (1 + std::abs(lo)));
    EXPECT_LE(agg.weights[j], hi + slack * (1 + std::abs(hi)));
  }
}

TEST(AggregateTest, IdenticalInputsReturnThatInput) {
  ModelParams p = nn::InitModel(ModelArchitecture::Default(), 8);
  std::vector<WeightedParams> in = {{&p, 3}, {&p, 11}, {&p, 400}};
  EXPECT_EQ(Aggregate(in).weights, p.weights);
  std::vector<WeightedParams> single = {{&p, 7}};
  EXPECT_EQ(Aggregate(single).weights, p.weights);
}

TEST(AggregateTest, RejectsBadInput) {
  ModelParams p = nn::InitModel(ModelArchitecture::Default(), 8);
  ModelParams small(ModelArchitecture{
      {15, 4, 1}, {nn::Activation::kRelu, nn::Activation::kSigmoid}});
  EXPECT_THROW(Aggregate({}), std::invalid_argument);
  std::vector<WeightedParams> mismatch = {{&p, 3}, {&small, 3}};
  EXPECT_THROW(Aggregate(mismatch), std::invalid_argument);
  std::vector<WeightedParams> empty_client = {{&p, 0}};
  EXPECT_THROW(Aggregate(empty_client), std::invalid_argument);
}

TEST(RunTrainingTest, SingleNoiselessClientEqualsCentralizedAdam) {
  std::vector<data::ClientPartition> parts = {MakePartition(0, 70, 12)};
  ClientConfig cfg = SmallConfig(0.0, 1e9, 0.0);
  cfg.training.local_epochs = 3;
  FederationConfig fed{1, 1, 1.0};
  const std::uint64_t seed = 21;
  TrainingResult fedrun = RunTraining(parts, fed, cfg, seed);

  // Centralized mini-batch Adam on the full dataset, same init and stream.
  ModelParams w = nn::InitModel(ModelArchitecture::Default(), seed);
  ModelParams w_batched = w;
  nn::AdamState adam(w.size()), adam_batched(w.size());
  Rng rng = ClientRng(seed, 0, 0);
  const auto& data = parts[0];
  std::vector<std::size_t> order(data.n_samples());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t e = 0; e < 3; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t s = 0; s < order.size(); s += 8) {
      std::vector<std::size_t> idx(
          order.begin() + s, order.begin() + std::min(order.size(), s + 8));
      std::vector<double> y;
      for (std::size_t i : idx) y.push_back(data.labels[i]);
      Matrix x = data.features.SelectRows(idx);
      Matrix rows = nn::PerSampleGradients(w, x, y, nullptr);
      std::vector<double> mean(w.size(), 0.0);
      for (std::size_t r = 0; r < rows.rows(); ++r) {
        for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += rows(r, c);
      }
      for (double& m : mean) m *= 1.0 / static_cast<double>(idx.size());
      nn::AdamStep(w, adam, mean, 0.01);
      nn::AdamStep(w_batched, adam_batched,
                   nn::BatchGradient(w_batched, x, y), 0.01);
    }
  }
  EXPECT_EQ(fedrun.params.weights, w.weights);
  for (std::size_t i = 0; i < w.size(); ++i) {
    ASSERT_NEAR(fedrun.params.weights[i], w_batched.weights[i], 1e-9);
  }
  EXPECT_TRUE(fedrun.spend.unbounded);
  EXPECT_TRUE(std::isinf(fedrun.spend.epsilon));
}

TEST(RunTrainingTest, EpsilonIndependentOfClipNorm) {
  auto parts = MakePartitions({30, 30, 41});
  FederationConfig fed{3, 2, 1.0};
  TrainingResult a = RunTraining(parts, fed, SmallConfig(1.0, 0.5, 0.0), 4);
  TrainingResult b = RunTraining(parts, fed, SmallConfig(1.0, 2.0, 0.0), 4);
  EXPECT_EQ(a.spend.epsilon, b.spend.epsilon);
  EXPECT_NE(a.params.weights, b.params.weights);

  // The smallest partition has the largest sample rate and sets the max.
  dp::RdpAccountant smallest;
  smallest.Step(1.0, 8.0 / 30.0, 2 * 2 * 4);
  EXPECT_DOUBLE_EQ(a.spend.epsilon, smallest.GetEpsilon(1e-5).epsilon);
}

TEST(RunTrainingTest, ThreadCountDoesNotChangeResult) {
  auto parts = MakePartitions({20, 25, 30, 35});
  FederationConfig fed{4, 3, 1.0};
  ClientConfig cfg = SmallConfig(1.0, 1.0, 0.01);
  TrainingResult one = RunTraining(parts, fed, cfg, 6,
                                   ModelArchitecture::Default(), 1);
  TrainingResult four = RunTraining(parts, fed, cfg, 6,
                                    ModelArchitecture::Default(), 4);
  EXPECT_EQ(one.params.weights, four.params.weights);
  EXPECT_EQ(one.spend.epsilon, four.spend.epsilon);
  ASSERT_EQ(one.history.size(), 3u);
  EXPECT_NE(RunTraining(parts, fed, cfg, 7).params.weights,
            one.params.weights);
}

TEST(RunTrainingTest, NoiselessTrainingReducesLoss) {
  auto parts = MakePartitions({60, 60});
  FederationConfig fed{2, 6, 1.0};
  TrainingResult r = RunTraining(parts, fed, SmallConfig(0.0, 1e6, 0.0), 2);
  EXPECT_LT(r.history.back().mean_loss, r.history.front().mean_loss);
}

TEST(RunRoundTest, PartialParticipationStepsOnlySelectedClients) {
  auto parts = MakePartitions({20, 20, 20, 20, 20});
  ServerState state = InitServer(ModelArchitecture::Default(), 5, 3);
  FederationConfig fed{5, 1, 0.4};
  RoundResult r = RunRound(state, parts, fed, SmallConfig(1.0, 1.0, 0.0));
  ASSERT_EQ(r.selected_clients.size(), 2u);
  EXPECT_TRUE(std::is_sorted(r.selected_clients.begin(),
                             r.selected_clients.end()));
  EXPECT_EQ(state.round, 1u);
  for (std::size_t c = 0; c < 5; ++c) {
    bool chosen = std::find(r.selected_clients.begin(),
                            r.selected_clients.end(),
                            c) != r.selected_clients.end();
    EXPECT_EQ(state.accountants[c].steps_taken() > 0, chosen);
  }
  EXPECT_EQ(state.global.weights, r.aggregated.weights);
}

TEST(FederationConfigTest, Validate) {
  EXPECT_THROW((FederationConfig{0, 1, 1.0}.Validate()), std::invalid_argument);
  EXPECT_THROW((FederationConfig{2, 1, 0.0}.Validate()), std::invalid_argument);
  EXPECT_THROW((FederationConfig{2, 1, 1.5}.Validate()), std::invalid_argument);
}

TEST(ClientRngTest, StreamsDifferByClientAndRound) {
  EXPECT_EQ(ClientRng(1, 2, 3), ClientRng(1, 2, 3));
  EXPECT_NE(ClientRng(1, 2, 3), ClientRng(1, 3, 3));
  EXPECT_NE(ClientRng(1, 2, 3), ClientRng(1, 2, 4));
  EXPECT_NE(ClientRng(1, 2, 3), ClientRng(2, 2, 3));
}

}  // namespace
}  // namespace fedfront::fl
