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

#include "fedfront/data/preprocess.h"

#include <cmath>

#include "fedfront/common/error.h"

namespace fedfront::data {

const std::vector<std::string>& FeatureColumnNames() {
  static const std::vector<std::string> kNames = {
      "age",
      "avg_glucose_level",
      "bmi",
      "hypertension",
      "heart_disease",
      "gender_Male",
      "ever_married_Yes",
      "Residence_type_Urban",
      "work_type_Never_worked",
      "work_type_Private",
      "work_type_Self-employed",
      "work_type_children",
      "smoking_status_formerly smoked",
      "smoking_status_never smoked",
      "smoking_status_smokes",
  };
  return kNames;
}

PreprocessStats FitPreprocessor(const std::vector<RawRecord>& train) {
  if (train.empty()) throw DataError("cannot fit preprocessor on empty set");
  PreprocessStats stats;
  double bmi_sum = 0.0;
  std::size_t bmi_n = 0;
  for (const RawRecord& r : train) {
    if (r.bmi) {
      bmi_sum += *r.bmi;
      ++bmi_n;
    }
  }
  if (bmi_n == 0) throw DataError("bmi is missing for every training record");
  stats.bmi_mean = bmi_sum / static_cast<double>(bmi_n);

  const double n = static_cast<double>(train.size());
  std::array<double, 3> sum{};
  for (const RawRecord& r : train) {
    sum[0] += r.age;
    sum[1] += r.avg_glucose_level;
    sum[2] += r.bmi.value_or(stats.bmi_mean);
  }
  for (int c = 0; c < 3; ++c) stats.scaler_means[c] = sum[c] / n;
  std::array<double, 3> sq{};
  for (const RawRecord& r : train) {
    double v[3] = {r.age, r.avg_glucose_level, r.bmi.value_or(stats.bmi_mean)};
    for (int c = 0; c < 3; ++c) {
      double d = v[c] - stats.scaler_means[c];
      sq[c] += d * d;
    }
  }
  static const char* kNames[3] = {"age", "avg_glucose_level", "bmi"};
  for (int c = 0; c < 3; ++c) {
    // Population standard deviation.
    stats.scaler_stds[c] = std::sqrt(sq[c] / n);
    if (!(stats.scaler_stds[c] > 0.0)) {
      throw DataError(std::string("zero variance in column '") + kNames[c] +
                      "'");
    }
  }
  return stats;
}

Transformed Transform(const std::vector<RawRecord>& records,
                      const PreprocessStats& stats) {
  Transformed out;
  out.features.column_names = FeatureColumnNames();
  out.features.rows = Matrix(records.size(), kNumFeatures);
  out.labels.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RawRecord& r = records[i];
    if (r.gender == Gender::kOther) {
      throw DataError("row " + std::to_string(i + 1) +
                      ", column 'gender': category 'Other' is not encodable");
    }
    auto row = out.features.rows.row(i);
    double cont[3] = {r.age, r.avg_glucose_level,
                      r.bmi.value_or(stats.bmi_mean)};
    for (int c = 0; c < 3; ++c) {
      row[c] = (cont[c] - stats.scaler_means[c]) / stats.scaler_stds[c];
    }
    row[3] = r.hypertension;
    row[4] = r.heart_disease;
    row[5] = r.gender == Gender::kMale ? 1.0 : 0.0;
    row[6] = r.ever_married == EverMarried::kYes ? 1.0 : 0.0;
    row[7] = r.residence == Residence::kUrban ? 1.0 : 0.0;
    // WorkType and SmokingStatus: enumerator 0 is the dropped reference.
    auto work = static_cast<std::size_t>(r.work_type);
    if (work > 0) row[8 + work - 1] = 1.0;
    auto smoke = static_cast<std::size_t>(r.smoking_status);
    if (smoke > 0) row[12 + smoke - 1] = 1.0;
    out.labels[i] = r.stroke;
  }
  return out;
}

}  // namespace fedfront::data
