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

#ifndef FEDFRONT_FL_FEDERATION_H_
#define FEDFRONT_FL_FEDERATION_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fedfront/common/rng.h"
#include "fedfront/data/split.h"
#include "fedfront/dp/dp.h"
#include "fedfront/dp/rdp_accountant.h"
#include "fedfront/nn/adam.h"
#include "fedfront/nn/model.h"

namespace fedfront::fl {

struct ClientConfig {
  nn::TrainingConfig training;
  dp::DpConfig dp;
  double proximal_mu = 0.0;  // 0 is the plain FedAvg local objective

  void Validate() const;
};

// mu * (w - w_global): gradient of (mu / 2) ||w - w_global||^2.
std::vector<double> ProximalGradient(const nn::ModelParams& w,
                                     const nn::ModelParams& w_global,
                                     double mu);
double ProximalPenalty(const nn::ModelParams& w,
                       const nn::ModelParams& w_global, double mu);

// Privacy cost of one local training call: `steps` subsampled Gaussian
// steps at rate `sample_rate`.
struct AccountantDelta {
  double noise_multiplier = 0.0;
  double sample_rate = 0.0;
  std::int64_t steps = 0;
};

struct ClientUpdate {
  nn::ModelParams params;
  std::size_t n_samples = 0;
  AccountantDelta accountant_delta;
  double mean_loss = 0.0;       // mean BCE over the final local epoch
  bool batch_clamped = false;   // batch size exceeded the partition
};

// Local DP-SGD training with an optional proximal term. Each epoch shuffles
// the partition with `rng` and walks fixed-size batches (final short batch
// kept). Per batch: per-sample gradients, plus mu * (w - w_global) on every
// row, clipped and noised, then one Adam step. Adam state starts fresh.
ClientUpdate RunClientUpdate(const nn::ModelParams& global,
                             const data::ClientPartition& data,
                             const ClientConfig& cfg, Rng& rng);

struct WeightedParams {
  const nn::ModelParams* params = nullptr;
  std::size_t n_samples = 0;
};

// Sample-count weighted mean sum_i (n_i / sum n) w_i.
nn::ModelParams Aggregate(std::span<const WeightedParams> updates);

struct FederationConfig {
  std::size_t num_clients = 10;
  std::size_t rounds = 100;
  double client_fraction = 1.0;

  void Validate() const;
};

// Server-side state between rounds. Client streams derive from
// (seed, client_id, round), so the state fully determines the next round.
struct ServerState {
  nn::ModelParams global;
  std::size_t round = 0;
  std::uint64_t seed = 0;
  std::vector<dp::RdpAccountant> accountants;  // one per client
};

ServerState InitServer(const nn::ModelArchitecture& arch,
                       std::size_t num_clients, std::uint64_t seed);

struct RoundResult {
  std::size_t round_index = 0;
  std::vector<std::size_t> selected_clients;
  std::vector<ClientUpdate> client_updates;  // aligned with selected_clients
  nn::ModelParams aggregated;
  std::vector<dp::RdpAccountant> per_client_accountants;
  double mean_loss = 0.0;
};

Rng ClientRng(std::uint64_t seed, std::size_t client_id, std::size_t round);

// Selects ceil(fraction * N) clients, trains them (on up to `threads`
// workers; results do not depend on the thread count), aggregates, and
// advances the state.
RoundResult RunRound(ServerState& state,
                     std::span<const data::ClientPartition> partitions,
                     const FederationConfig& fed, const ClientConfig& cfg,
                     std::size_t threads = 1);

struct RoundSummary {
  std::size_t round = 0;
  double mean_loss = 0.0;
};

struct TrainingResult {
  nn::ModelParams params;
  std::vector<RoundSummary> history;
  dp::PrivacySpend spend;  // max epsilon over clients
};

TrainingResult RunTraining(std::span<const data::ClientPartition> partitions,
                           const FederationConfig& fed,
                           const ClientConfig& cfg, std::uint64_t seed,
                           const nn::ModelArchitecture& arch =
                               nn::ModelArchitecture::Default(),
                           std::size_t threads = 1);

// Worst-case spend across per-client ledgers.
dp::PrivacySpend MaxEpsilon(std::span<const dp::RdpAccountant> accountants,
                            double delta);

}  // namespace fedfront::fl

#endif  // FEDFRONT_FL_FEDERATION_H_
