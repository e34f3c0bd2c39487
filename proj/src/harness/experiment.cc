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

#include "fedfront/harness/experiment.h"

#include <array>
#include <exception>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fedfront/common/parallel.h"
#include "fedfront/common/rng.h"

namespace fedfront::harness {

namespace {
constexpr std::array<std::string_view, 3> kStageNames = {
    "baseline", "smotetomek_fedavg", "smotetomek_fedprox"};
}  // namespace

std::string_view StageName(Stage stage) {
  return kStageNames[static_cast<std::size_t>(stage)];
}

std::optional<Stage> ParseStage(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

PreparedData PrepareData(const std::vector<data::RawRecord>& records,
                         const DataConfig& cfg) {
  PreparedData out;
  std::vector<data::RawRecord> kept = data::DropOtherGender(records);
  out.records_after_drop = kept.size();
  data::RecordSplit split =
      data::StratifiedSplit(kept, cfg.test_fraction, cfg.data_seed);
  out.stats = data::FitPreprocessor(split.train);
  data::Transformed train = data::Transform(split.train, out.stats);
  data::Transformed test = data::Transform(split.test, out.stats);
  out.train_rows = train.labels.size();
  out.test_features = std::move(test.features.rows);
  out.test_labels = std::move(test.labels);

  std::optional<std::uint64_t> shuffle;
  if (cfg.shuffle_before_partition) shuffle = cfg.data_seed;
  out.raw_partitions = data::PartitionClients(
      train.features.rows, train.labels, cfg.num_clients, shuffle);
  for (const data::ClientPartition& p : out.raw_partitions) {
    Rng rng = MakeRng(cfg.data_seed, {0x3e5a, p.client_id});
    resample::SmoteTomekResult r =
        resample::SmoteTomek(p.features, p.labels, rng);
    data::ClientPartition balanced;
    balanced.client_id = p.client_id;
    balanced.features = std::move(r.data.features);
    balanced.labels = std::move(r.data.labels);
    out.resampled_partitions.push_back(std::move(balanced));
    out.reports.push_back(r.report);
  }
  return out;
}

std::string StageLabel(const RunSpec& spec) {
  if (!spec.resample) return std::string(StageName(Stage::kBaseline));
  return std::string(StageName(spec.mu > 0.0 ? Stage::kSmoteTomekFedProx
                                             : Stage::kSmoteTomekFedAvg));
}

MetricsRow RunSingle(const PreparedData& data, const ExperimentConfig& cfg,
                     const RunSpec& spec) {
  MetricsRow row;
  row.stage = StageLabel(spec);
  row.mu = spec.mu;
  row.sigma = spec.sigma;
  row.clip = spec.clip;
  row.seed = spec.seed;

  fl::FederationConfig fed;
  fed.rounds = cfg.rounds;
  fed.num_clients = data.raw_partitions.size();
  fl::ClientConfig client;
  client.training = cfg.training;
  client.dp = {spec.sigma, spec.clip, cfg.delta};
  client.proximal_mu = spec.mu;

  const auto& parts =
      spec.resample ? data.resampled_partitions : data.raw_partitions;
  fl::TrainingResult trained = fl::RunTraining(
      parts, fed, client, spec.seed, nn::ModelArchitecture::Default(),
      cfg.client_threads);
  Evaluation ev = Evaluate(trained.params, data.test_features,
                           data.test_labels, cfg.threshold);
  row.epsilon = trained.spend.epsilon;
  row.metrics = ev.metrics;
  row.counts = ev.counts;
  return row;
}

MetricsRow RunStage(Stage stage, const PreparedData& data,
                    const ExperimentConfig& cfg, double sigma, double clip,
                    std::uint64_t seed) {
  RunSpec spec;
  spec.sigma = sigma;
  spec.clip = clip;
  spec.seed = seed;
  spec.resample = stage != Stage::kBaseline;
  spec.mu = stage == Stage::kSmoteTomekFedProx ? kFedProxStageMu : 0.0;
  return RunSingle(data, cfg, spec);
}

void SweepGrid::Validate() const {
  if (mu_values.empty() || sigma_values.empty() || clip_values.empty() ||
      seeds.empty()) {
    throw std::invalid_argument("sweep grid lists must be nonempty");
  }
  for (double m : mu_values) {
    if (!(m >= 0.0)) throw std::invalid_argument("mu values must be >= 0");
  }
  for (double s : sigma_values) {
    if (!(s >= 0.0)) throw std::invalid_argument("sigma values must be >= 0");
  }
  for (double c : clip_values) {
    if (!(c > 0.0)) throw std::invalid_argument("clip values must be > 0");
  }
}

std::vector<MetricsRow> RunSweep(const SweepGrid& grid,
                                 const PreparedData& data,
                                 const ExperimentConfig& cfg, bool resample,
                                 std::size_t threads) {
  grid.Validate();
  std::vector<RunSpec> specs;
  specs.reserve(grid.size());
  for (double mu : grid.mu_values) {
    for (double sigma : grid.sigma_values) {
      for (double clip : grid.clip_values) {
        for (std::uint64_t seed : grid.seeds) {
          specs.push_back({mu, sigma, clip, seed, resample});
        }
      }
    }
  }
  std::vector<MetricsRow> rows(specs.size());
  ParallelFor(specs.size(), threads, [&](std::size_t i) {
    try {
      rows[i] = RunSingle(data, cfg, specs[i]);
    } catch (const std::exception& e) {
      MetricsRow failed;
      failed.stage = StageLabel(specs[i]);
      failed.mu = specs[i].mu;
      failed.sigma = specs[i].sigma;
      failed.clip = specs[i].clip;
      failed.seed = specs[i].seed;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      failed.epsilon = nan;
      failed.metrics = {nan, nan, nan, nan};
      failed.failed = true;
      failed.error = e.what();
      rows[i] = std::move(failed);
    }
  });
  return rows;
}

void DescribeRun(fl::RunManifest& manifest, const DataConfig& data_cfg,
                 const PreparedData& data, const ExperimentConfig& cfg) {
  manifest.Set("num_clients", data_cfg.num_clients);
  manifest.Set("test_fraction", data_cfg.test_fraction);
  manifest.Set("data_seed", static_cast<long long>(data_cfg.data_seed));
  manifest.Set("shuffle_before_partition",
               std::string(data_cfg.shuffle_before_partition ? "true" : "false"));
  manifest.Set("records_after_drop", data.records_after_drop);
  manifest.Set("train_rows", data.train_rows);
  manifest.Set("test_rows", data.test_labels.size());
  auto join = [](const auto& parts) {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      os << (i ? "," : "") << parts[i].n_samples();
    }
    return os.str();
  };
  manifest.Set("partition_sizes", join(data.raw_partitions));
  manifest.Set("resampled_partition_sizes", join(data.resampled_partitions));
  manifest.Set("rounds", cfg.rounds);
  manifest.Set("local_epochs", cfg.training.local_epochs);
  manifest.Set("batch_size", cfg.training.batch_size);
  manifest.Set("learning_rate", cfg.training.learning_rate);
  manifest.Set("optimizer", std::string("adam(0.9,0.999,1e-8)"));
  manifest.Set("client_fraction", 1.0);
  manifest.Set("delta", cfg.delta);
  manifest.Set("threshold", cfg.threshold);
}

}  // namespace fedfront::harness
