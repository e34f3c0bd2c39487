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

#ifndef FEDFRONT_HARNESS_EXPERIMENT_H_
#define FEDFRONT_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedfront/data/preprocess.h"
#include "fedfront/data/records.h"
#include "fedfront/data/split.h"
#include "fedfront/fl/federation.h"
#include "fedfront/fl/manifest.h"
#include "fedfront/harness/metrics.h"
#include "fedfront/resample/resample.h"

namespace fedfront::harness {

enum class Stage { kBaseline, kSmoteTomekFedAvg, kSmoteTomekFedProx };

std::string_view StageName(Stage stage);
std::optional<Stage> ParseStage(std::string_view name);

inline constexpr double kFedProxStageMu = 0.01;

struct DataConfig {
  std::size_t num_clients = 10;
  double test_fraction = 0.2;
  std::uint64_t data_seed = 42;  // split and resampling
  bool shuffle_before_partition = false;
};

// Everything derived from the dataset that does not depend on the DP or
// proximal settings: fitted stats, raw and SMOTETomek-balanced client
// partitions, and the untouched test set.
struct PreparedData {
  data::PreprocessStats stats;
  std::size_t records_after_drop = 0;
  std::size_t train_rows = 0;
  std::vector<data::ClientPartition> raw_partitions;
  std::vector<data::ClientPartition> resampled_partitions;
  std::vector<resample::ResampleReport> reports;
  Matrix test_features;
  std::vector<double> test_labels;
};

PreparedData PrepareData(const std::vector<data::RawRecord>& records,
                         const DataConfig& cfg);

struct ExperimentConfig {
  std::size_t rounds = 30;
  nn::TrainingConfig training;
  double delta = 1e-5;
  double threshold = 0.5;
  std::size_t client_threads = 1;
};

struct RunSpec {
  double mu = 0.0;
  double sigma = 1.0;
  double clip = 1.0;
  std::uint64_t seed = 0;
  bool resample = true;
};

// Stage label for a run: baseline without resampling, otherwise FedAvg for
// mu = 0 and FedProx for mu > 0.
std::string StageLabel(const RunSpec& spec);

// Trains one configuration end to end and evaluates on the test set.
MetricsRow RunSingle(const PreparedData& data, const ExperimentConfig& cfg,
                     const RunSpec& spec);

// One of the three comparison stages at the given (sigma, C, seed).
MetricsRow RunStage(Stage stage, const PreparedData& data,
                    const ExperimentConfig& cfg, double sigma, double clip,
                    std::uint64_t seed);

struct SweepGrid {
  std::vector<double> mu_values{1.0, 0.1, 0.01};
  std::vector<double> sigma_values{0.5, 1.0, 1.5, 2.0};
  std::vector<double> clip_values{0.8, 1.0, 1.5};
  std::vector<std::uint64_t> seeds{0};

  void Validate() const;
  std::size_t size() const {
    return mu_values.size() * sigma_values.size() * clip_values.size() *
           seeds.size();
  }
};

// Full Cartesian product, rows ordered mu, sigma, C, seed (outer to inner).
// Cells run on up to `threads` workers; a failed cell becomes a row with
// failed = true and the sweep continues.
std::vector<MetricsRow> RunSweep(const SweepGrid& grid,
                                 const PreparedData& data,
                                 const ExperimentConfig& cfg,
                                 bool resample = true,
                                 std::size_t threads = 1);

// Adds data and experiment settings to a manifest.
void DescribeRun(fl::RunManifest& manifest, const DataConfig& data_cfg,
                 const PreparedData& data, const ExperimentConfig& cfg);

}  // namespace fedfront::harness

#endif  // FEDFRONT_HARNESS_EXPERIMENT_H_
