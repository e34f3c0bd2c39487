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

#include "fedfront/data/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fedfront/common/rng.h"

namespace fedfront::data {
namespace {

// Location/scale loosely follow the public dataset's marginals.
constexpr double kAgeMean = 42.0, kAgeStd = 22.0;
constexpr double kGlucoseMean = 104.0, kGlucoseStd = 43.0;
constexpr double kBmiMean = 28.9, kBmiStd = 7.7;
constexpr double kMissingBmiRate = 0.04;

double Rounded(double v, double step) { return std::round(v / step) * step; }

}  // namespace

std::vector<RawRecord> SynthDataset(std::size_t n, double positive_rate,
                                    std::uint64_t seed) {
  if (!(positive_rate > 0.0 && positive_rate < 1.0)) {
    throw std::invalid_argument("positive_rate must lie in (0, 1)");
  }
  Rng rng = MakeRng(seed, {0x5e7d});
  const auto n_pos = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * positive_rate));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> label(n, 0);
  for (std::size_t i = 0; i < n_pos; ++i) label[order[i]] = 1;

  std::normal_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto pick = [&](std::size_t k) {
    return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
  };

  std::vector<RawRecord> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    RawRecord& r = out[i];
    const double shift = label[i] == 1 ? 1.0 : 0.0;
    r.stroke = label[i];
    r.gender = pick(2) == 0 ? Gender::kFemale : Gender::kMale;
    r.age = std::clamp(Rounded(kAgeMean + kAgeStd * (unit(rng) + shift), 0.01),
                       0.08, 82.0);
    r.hypertension = u01(rng) < 0.1 ? 1 : 0;
    r.heart_disease = u01(rng) < 0.05 ? 1 : 0;
    r.ever_married = static_cast<EverMarried>(pick(kEverMarriedNames.size()));
    r.work_type = static_cast<WorkType>(pick(kWorkTypeNames.size()));
    r.residence = static_cast<Residence>(pick(kResidenceNames.size()));
    r.avg_glucose_level = std::clamp(
        Rounded(kGlucoseMean + kGlucoseStd * (unit(rng) + shift), 0.01), 55.0,
        272.0);
    double bmi = std::clamp(Rounded(kBmiMean + kBmiStd * unit(rng), 0.1),
                            10.3, 97.6);
    if (u01(rng) >= kMissingBmiRate) r.bmi = bmi;
    r.smoking_status = static_cast<SmokingStatus>(pick(kSmokingNames.size()));
  }
  return out;
}

}  // namespace fedfront::data
