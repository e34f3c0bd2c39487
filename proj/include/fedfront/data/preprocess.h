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

#ifndef FEDFRONT_DATA_PREPROCESS_H_
#define FEDFRONT_DATA_PREPROCESS_H_

#include <array>
#include <string>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/data/records.h"

namespace fedfront::data {

inline constexpr std::size_t kNumFeatures = 15;

// Column order of the preprocessed matrix: 3 z-scored continuous columns,
// 2 raw binary flags, then drop-first one-hot indicators.
const std::vector<std::string>& FeatureColumnNames();

struct PreprocessStats {
  double bmi_mean = 0.0;
  // age, avg_glucose_level, bmi (after imputation).
  std::array<double, 3> scaler_means{};
  std::array<double, 3> scaler_stds{};

  friend bool operator==(const PreprocessStats&,
                         const PreprocessStats&) = default;
};

struct FeatureMatrix {
  Matrix rows;
  std::vector<std::string> column_names;
};

// Fits imputation and scaling on training records only. Throws DataError if
// every bmi is missing or a continuous column has zero variance.
PreprocessStats FitPreprocessor(const std::vector<RawRecord>& train);

struct Transformed {
  FeatureMatrix features;
  std::vector<double> labels;
};

// Applies fitted stats; never re-estimates. Records with gender Other are
// outside the encoding and raise DataError.
Transformed Transform(const std::vector<RawRecord>& records,
                      const PreprocessStats& stats);

}  // namespace fedfront::data

#endif  // FEDFRONT_DATA_PREPROCESS_H_
