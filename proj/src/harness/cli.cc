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

#include "fedfront/harness/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fedfront/common/error.h"
#include "fedfront/common/parallel.h"
#include "fedfront/data/csv.h"
#include "fedfront/data/synth.h"
#include "fedfront/fl/manifest.h"
#include "fedfront/harness/experiment.h"
#include "fedfront/harness/report.h"

namespace fedfront::harness {
namespace {

namespace fs = std::filesystem;

constexpr std::size_t kSynthRows = 5109;
constexpr double kSynthPositiveRate = 0.05;

struct CommonFlags {
  std::string data;
  std::string out_dir = ".";
  std::uint64_t data_seed = 42;
  std::size_t rounds = 30;
  std::size_t epochs = 5;
  std::size_t clients = 10;
  std::size_t batch_size = 32;
  double lr = 0.001;
  double delta = 1e-5;
  bool no_resample = false;
  bool shuffle_partitions = false;
};

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--data", f.data,
                  "Stroke CSV; a 5,109-row synthetic stand-in when omitted");
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--data-seed", f.data_seed,
                  "Seed for the split, resampling and synthetic data");
  cmd->add_option("--rounds", f.rounds, "Communication rounds R");
  cmd->add_option("--epochs", f.epochs, "Local epochs E");
  cmd->add_option("--clients", f.clients, "Number of clients N");
  cmd->add_option("--batch-size", f.batch_size, "Local batch size");
  cmd->add_option("--lr", f.lr, "Adam learning rate");
  cmd->add_option("--delta", f.delta, "Target delta");
  cmd->add_flag("--no-resample", f.no_resample,
                "Skip client-side SMOTETomek (baseline stage)");
  cmd->add_flag("--shuffle-partitions", f.shuffle_partitions,
                "Shuffle training rows before contiguous partitioning");
}

std::vector<data::RawRecord> LoadRecords(const CommonFlags& f) {
  if (!f.data.empty()) return data::ParseCsv(fs::path(f.data));
  return data::SynthDataset(kSynthRows, kSynthPositiveRate, f.data_seed);
}

DataConfig MakeDataConfig(const CommonFlags& f) {
  DataConfig cfg;
  cfg.num_clients = f.clients;
  cfg.data_seed = f.data_seed;
  cfg.shuffle_before_partition = f.shuffle_partitions;
  return cfg;
}

ExperimentConfig MakeExperimentConfig(const CommonFlags& f) {
  ExperimentConfig cfg;
  cfg.rounds = f.rounds;
  cfg.training.local_epochs = f.epochs;
  cfg.training.batch_size = f.batch_size;
  cfg.training.learning_rate = f.lr;
  cfg.delta = f.delta;
  return cfg;
}

fs::path PrepareOutDir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

template <typename T>
std::string JoinList(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

int RunPreprocess(const CommonFlags& f) {
  std::vector<data::RawRecord> records = LoadRecords(f);
  std::vector<data::RawRecord> kept = data::DropOtherGender(records);
  DataConfig dcfg = MakeDataConfig(f);
  data::RecordSplit split =
      data::StratifiedSplit(kept, dcfg.test_fraction, dcfg.data_seed);
  data::PreprocessStats stats = data::FitPreprocessor(split.train);
  data::Transformed train = data::Transform(split.train, stats);
  data::Transformed test = data::Transform(split.test, stats);
  fs::path out = PrepareOutDir(f.out_dir);
  data::WriteFeatureCsv(train.features.rows, train.labels,
                        train.features.column_names, out / "train_features.csv");
  data::WriteFeatureCsv(test.features.rows, test.labels,
                        test.features.column_names, out / "test_features.csv");

  fl::RunManifest m;
  m.Set("command", std::string("preprocess"));
  m.Set("data", f.data.empty() ? std::string("synthetic") : f.data);
  m.Set("records", records.size());
  m.Set("records_after_drop", kept.size());
  m.Set("train_rows", train.labels.size());
  m.Set("test_rows", test.labels.size());
  m.Set("data_seed", static_cast<long long>(dcfg.data_seed));
  m.Set("bmi_mean", stats.bmi_mean);
  static const char* kCont[3] = {"age", "avg_glucose_level", "bmi"};
  for (int c = 0; c < 3; ++c) {
    m.Set(std::string("scaler_mean.") + kCont[c], stats.scaler_means[c]);
    m.Set(std::string("scaler_std.") + kCont[c], stats.scaler_stds[c]);
  }
  m.Write(out / "preprocess_stats.txt");
  std::cout << "wrote " << train.labels.size() << " train and "
            << test.labels.size() << " test rows to " << out << "\n";
  return kExitOk;
}

int RunSynth(std::size_t rows, double rate, std::uint64_t seed,
             const std::string& out_dir, const std::string& out_file) {
  std::vector<data::RawRecord> records = data::SynthDataset(rows, rate, seed);
  fs::path path = out_file.empty() ? PrepareOutDir(out_dir) / "stroke_synth.csv"
                                   : fs::path(out_file);
  data::WriteRecordsCsv(records, path);
  std::cout << "wrote " << records.size() << " records ("
            << data::CountPositives(records) << " positive) to " << path
            << "\n";
  return kExitOk;
}

int RunTrain(const CommonFlags& f, std::optional<double> mu, double sigma,
             double clip, std::uint64_t seed, const std::string& stage_name) {
  RunSpec spec;
  spec.sigma = sigma;
  spec.clip = clip;
  spec.seed = seed;
  spec.mu = kFedProxStageMu;
  if (!stage_name.empty()) {
    std::optional<Stage> stage = ParseStage(stage_name);
    if (!stage) throw CLI::ValidationError("--stage", "unknown stage " + stage_name);
    spec.resample = *stage != Stage::kBaseline;
    spec.mu = *stage == Stage::kSmoteTomekFedProx ? kFedProxStageMu : 0.0;
  }
  if (mu) spec.mu = *mu;
  if (f.no_resample) spec.resample = false;

  DataConfig dcfg = MakeDataConfig(f);
  ExperimentConfig ecfg = MakeExperimentConfig(f);
  ecfg.client_threads = ConfiguredThreads();
  PreparedData prepared = PrepareData(LoadRecords(f), dcfg);
  MetricsRow row = RunSingle(prepared, ecfg, spec);

  fs::path out = PrepareOutDir(f.out_dir);
  WriteMetricsCsv({row}, out / "metrics.csv");
  fl::RunManifest m;
  m.Set("command", std::string("train"));
  m.Set("data", f.data.empty() ? std::string("synthetic") : f.data);
  m.Set("stage", row.stage);
  m.Set("seed", static_cast<long long>(seed));
  m.Set("mu", spec.mu);
  m.Set("sigma", sigma);
  m.Set("clip", clip);
  m.Set("resample", std::string(spec.resample ? "true" : "false"));
  DescribeRun(m, dcfg, prepared, ecfg);
  m.Set("epsilon", row.epsilon);
  m.Write(out / "manifest.txt");
  std::cout << FormatMetricsCsv({row});
  return kExitOk;
}

int RunSweepCommand(const CommonFlags& f, const SweepGrid& grid) {
  DataConfig dcfg = MakeDataConfig(f);
  ExperimentConfig ecfg = MakeExperimentConfig(f);
  PreparedData prepared = PrepareData(LoadRecords(f), dcfg);
  std::vector<MetricsRow> rows =
      RunSweep(grid, prepared, ecfg, !f.no_resample, ConfiguredThreads());

  fs::path out = PrepareOutDir(f.out_dir);
  WriteMetricsCsv(rows, out / "metrics.csv");
  fl::RunManifest m;
  m.Set("command", std::string("sweep"));
  m.Set("data", f.data.empty() ? std::string("synthetic") : f.data);
  m.Set("grid.mu", JoinList(grid.mu_values));
  m.Set("grid.sigma", JoinList(grid.sigma_values));
  m.Set("grid.clip", JoinList(grid.clip_values));
  m.Set("grid.seeds", JoinList(grid.seeds));
  m.Set("resample", std::string(f.no_resample ? "false" : "true"));
  DescribeRun(m, dcfg, prepared, ecfg);
  m.Set("rows", rows.size());
  m.Write(out / "manifest.txt");

  std::size_t failed = 0;
  for (const MetricsRow& r : rows) {
    if (r.failed) {
      ++failed;
      std::cerr << "run failed (mu=" << r.mu << ", sigma=" << r.sigma
                << ", C=" << r.clip << ", seed=" << r.seed << "): " << r.error
                << "\n";
    }
  }
  std::cout << "wrote " << rows.size() << " rows to " << out / "metrics.csv"
            << "\n";
  return failed == 0 ? kExitOk : kExitRunFailure;
}

int RunReport(const std::string& metrics, const std::string& out_dir) {
  std::vector<MetricsRow> rows = ReadMetricsCsv(fs::path(metrics));
  if (rows.empty()) throw DataError("metrics CSV '" + metrics + "' has no rows");
  fs::path out = PrepareOutDir(out_dir);
  EmitFrontier(rows, out / "frontier.svg");
  EmitEpsilonHeatmap(rows, out / "epsilon_heatmap.svg");
  std::cout << "wrote " << out / "frontier.svg" << " and "
            << out / "epsilon_heatmap.svg" << "\n";
  return kExitOk;
}

}  // namespace

int CliMain(int argc, const char* const* argv) {
  CLI::App app{"Differentially private federated learning simulator",
               "fedfront"};
  app.require_subcommand(1);

  CommonFlags preprocess_flags;
  CLI::App* preprocess =
      app.add_subcommand("preprocess", "CSV -> feature dump + stats");
  AddCommon(preprocess, preprocess_flags);

  std::size_t synth_rows = kSynthRows;
  double synth_rate = kSynthPositiveRate;
  std::uint64_t synth_seed = 42;
  std::string synth_dir = ".", synth_out;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--rows", synth_rows, "Number of records");
  synth->add_option("--positive-rate", synth_rate, "Fraction of stroke cases");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out-dir", synth_dir, "Output directory");
  synth->add_option("--out", synth_out, "Output file (overrides --out-dir)");

  CommonFlags train_flags;
  std::optional<double> train_mu;
  double train_sigma = 1.0, train_clip = 1.0;
  std::uint64_t train_seed = 0;
  std::string train_stage;
  CLI::App* train =
      app.add_subcommand("train", "Train and evaluate one configuration");
  AddCommon(train, train_flags);
  train->add_option("--mu", train_mu, "Proximal mu (0 = FedAvg)");
  train->add_option("--sigma", train_sigma, "Noise multiplier");
  train->add_option("--clip", train_clip, "Per-sample clipping norm");
  train->add_option("--seed", train_seed, "Training seed");
  train->add_option("--stage", train_stage,
                    "baseline | smotetomek_fedavg | smotetomek_fedprox");

  CommonFlags sweep_flags;
  SweepGrid grid;
  grid.seeds = {0, 1, 2};
  CLI::App* sweep = app.add_subcommand("sweep", "Grid sweep over mu, sigma, C");
  AddCommon(sweep, sweep_flags);
  sweep->add_option("--mu", grid.mu_values, "Comma list of mu values")
      ->delimiter(',');
  sweep->add_option("--sigma", grid.sigma_values, "Comma list of sigmas")
      ->delimiter(',');
  sweep->add_option("--clip", grid.clip_values, "Comma list of clip norms")
      ->delimiter(',');
  sweep->add_option("--seed", grid.seeds, "Comma list of training seeds")
      ->delimiter(',');

  std::string report_metrics = "metrics.csv", report_dir = ".";
  CLI::App* report =
      app.add_subcommand("report", "Metrics CSV -> frontier + heatmap SVG");
  report->add_option("--metrics,--data", report_metrics, "Metrics CSV");
  report->add_option("--out-dir", report_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*preprocess) return RunPreprocess(preprocess_flags);
    if (*synth) {
      return RunSynth(synth_rows, synth_rate, synth_seed, synth_dir, synth_out);
    }
    if (*train) {
      return RunTrain(train_flags, train_mu, train_sigma, train_clip,
                      train_seed, train_stage);
    }
    if (*sweep) return RunSweepCommand(sweep_flags, grid);
    if (*report) return RunReport(report_metrics, report_dir);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return kExitUsage;
}

}  // namespace fedfront::harness
