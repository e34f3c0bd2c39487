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

#include "fedfront/fl/federation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fedfront/common/parallel.h"

namespace fedfront::fl {

void ClientConfig::Validate() const {
  training.Validate();
  dp.Validate();
  if (!(proximal_mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
}

void FederationConfig::Validate() const {
  if (num_clients < 1) throw std::invalid_argument("need at least one client");
  if (!(client_fraction > 0.0 && client_fraction <= 1.0)) {
    throw std::invalid_argument("client fraction must lie in (0, 1]");
  }
}

std::vector<double> ProximalGradient(const nn::ModelParams& w,
                                     const nn::ModelParams& w_global,
                                     double mu) {
  if (w.size() != w_global.size()) {
    throw std::invalid_argument("ProximalGradient: length mismatch");
  }
  std::vector<double> g(w.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = mu * (w.weights[i] - w_global.weights[i]);
  }
  return g;
}

double ProximalPenalty(const nn::ModelParams& w,
                       const nn::ModelParams& w_global, double mu) {
  if (w.size() != w_global.size()) {
    throw std::invalid_argument("ProximalPenalty: length mismatch");
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    double d = w.weights[i] - w_global.weights[i];
    sq += d * d;
  }
  return 0.5 * mu * sq;
}

ClientUpdate RunClientUpdate(const nn::ModelParams& global,
                             const data::ClientPartition& data,
                             const ClientConfig& cfg, Rng& rng) {
  cfg.Validate();
  const std::size_t n = data.n_samples();
  if (n == 0) throw std::invalid_argument("client partition is empty");
  if (data.features.cols() != global.arch.input_width()) {
    throw std::invalid_argument("partition width does not match model");
  }

  ClientUpdate out;
  out.params = global;
  out.n_samples = n;
  std::size_t batch = cfg.training.batch_size;
  if (batch > n) {
    batch = n;
    out.batch_clamped = true;
  }
  const std::size_t batches_per_epoch = (n + batch - 1) / batch;

  nn::AdamState adam(global.size());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> batch_labels;
  std::vector<double> losses;
  double last_epoch_loss = 0.0;

  for (std::size_t epoch = 0; epoch < cfg.training.local_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    last_epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      std::size_t end = std::min(n, start + batch);
      std::span<const std::size_t> idx(order.data() + start, end - start);
      Matrix x = data.features.SelectRows(idx);
      batch_labels.clear();
      for (std::size_t i : idx) batch_labels.push_back(data.labels[i]);

      Matrix grads = nn::PerSampleGradients(out.params, x, batch_labels, &losses);
      for (double l : losses) last_epoch_loss += l;
      if (cfg.proximal_mu != 0.0) {
        std::vector<double> prox =
            ProximalGradient(out.params, global, cfg.proximal_mu);
        for (std::size_t r = 0; r < grads.rows(); ++r) {
          auto row = grads.row(r);
          for (std::size_t c = 0; c < row.size(); ++c) row[c] += prox[c];
        }
      }
      std::vector<double> noisy = dp::PrivatizeBatch(grads, cfg.dp, rng);
      nn::AdamStep(out.params, adam, noisy, cfg.training.learning_rate);
    }
  }
  out.mean_loss = last_epoch_loss / static_cast<double>(n);
  out.accountant_delta = {
      cfg.dp.noise_multiplier, dp::SampleRate(batch, n),
      static_cast<std::int64_t>(cfg.training.local_epochs * batches_per_epoch)};
  return out;
}

nn::ModelParams Aggregate(std::span<const WeightedParams> updates) {
  if (updates.empty()) throw std::invalid_argument("Aggregate: no updates");
  const std::size_t p = updates.front().params->size();
  double total = 0.0;
  for (const WeightedParams& u : updates) {
    if (u.params->size() != p) {
      throw std::invalid_argument("Aggregate: parameter length mismatch");
    }
    if (u.n_samples < 1) {
      throw std::invalid_argument("Aggregate: client with zero samples");
    }
    total += static_cast<double>(u.n_samples);
  }
  // Accumulate offsets from the first update so that identical inputs
  // aggregate to exactly that input.
  const std::vector<double>& ref = updates.front().params->weights;
  nn::ModelParams out = *updates.front().params;
  std::vector<double> offset(p, 0.0);
  for (const WeightedParams& u : updates) {
    double coef = static_cast<double>(u.n_samples) / total;
    for (std::size_t i = 0; i < p; ++i) {
      offset[i] += coef * (u.params->weights[i] - ref[i]);
    }
  }
  for (std::size_t i = 0; i < p; ++i) out.weights[i] = ref[i] + offset[i];
  return out;
}

ServerState InitServer(const nn::ModelArchitecture& arch,
                       std::size_t num_clients, std::uint64_t seed) {
  ServerState state;
  state.global = nn::InitModel(arch, seed);
  state.seed = seed;
  state.accountants.assign(num_clients, dp::RdpAccountant());
  return state;
}

Rng ClientRng(std::uint64_t seed, std::size_t client_id, std::size_t round) {
  return MakeRng(seed, {0xc11e, client_id, round});
}

RoundResult RunRound(ServerState& state,
                     std::span<const data::ClientPartition> partitions,
                     const FederationConfig& fed, const ClientConfig& cfg,
                     std::size_t threads) {
  fed.Validate();
  const std::size_t n_clients = partitions.size();
  if (n_clients == 0) throw std::invalid_argument("no client partitions");
  if (state.accountants.size() != n_clients) {
    state.accountants.resize(n_clients);
  }

  RoundResult result;
  result.round_index = state.round;
  auto n_select = static_cast<std::size_t>(
      std::ceil(fed.client_fraction * static_cast<double>(n_clients)));
  n_select = std::clamp<std::size_t>(n_select, 1, n_clients);
  std::vector<std::size_t> ids(n_clients);
  std::iota(ids.begin(), ids.end(), 0);
  if (n_select < n_clients) {
    Rng select = MakeRng(state.seed, {0x5e1ec7, state.round});
    std::shuffle(ids.begin(), ids.end(), select);
    ids.resize(n_select);
    std::sort(ids.begin(), ids.end());
  }
  result.selected_clients = ids;
  result.client_updates.resize(ids.size());

  ParallelFor(ids.size(), threads, [&](std::size_t k) {
    const data::ClientPartition& part = partitions[ids[k]];
    Rng rng = ClientRng(state.seed, part.client_id, state.round);
    result.client_updates[k] = RunClientUpdate(state.global, part, cfg, rng);
  });

  std::vector<WeightedParams> weighted;
  double loss = 0.0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const ClientUpdate& u = result.client_updates[k];
    weighted.push_back({&u.params, u.n_samples});
    loss += u.mean_loss;
    const AccountantDelta& d = u.accountant_delta;
    state.accountants[ids[k]].Step(d.noise_multiplier, d.sample_rate, d.steps);
  }
  result.mean_loss = loss / static_cast<double>(ids.size());
  result.aggregated = Aggregate(weighted);
  result.per_client_accountants = state.accountants;
  state.global = result.aggregated;
  ++state.round;
  return result;
}

dp::PrivacySpend MaxEpsilon(std::span<const dp::RdpAccountant> accountants,
                            double delta) {
  dp::PrivacySpend worst;
  worst.delta = delta;
  for (const dp::RdpAccountant& a : accountants) {
    dp::PrivacySpend s = a.GetEpsilon(delta);
    if (s.unbounded || s.epsilon > worst.epsilon) worst = s;
    if (worst.unbounded) break;
  }
  return worst;
}

TrainingResult RunTraining(std::span<const data::ClientPartition> partitions,
                           const FederationConfig& fed,
                           const ClientConfig& cfg, std::uint64_t seed,
                           const nn::ModelArchitecture& arch,
                           std::size_t threads) {
  if (partitions.empty()) throw std::invalid_argument("no client partitions");
  ServerState state = InitServer(arch, partitions.size(), seed);
  TrainingResult result;
  for (std::size_t r = 0; r < fed.rounds; ++r) {
    RoundResult round = RunRound(state, partitions, fed, cfg, threads);
    result.history.push_back({round.round_index, round.mean_loss});
  }
  result.params = state.global;
  result.spend = MaxEpsilon(state.accountants, cfg.dp.delta);
  return result;
}

}  // namespace fedfront::fl
