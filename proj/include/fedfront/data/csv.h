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

#ifndef FEDFRONT_DATA_CSV_H_
#define FEDFRONT_DATA_CSV_H_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "fedfront/common/matrix.h"
#include "fedfront/data/records.h"

namespace fedfront::data {

// Reads the stroke CSV (header: [id,]gender,age,hypertension,heart_disease,
// ever_married,work_type,Residence_type,avg_glucose_level,bmi,
// smoking_status,stroke). "N/A" in bmi means missing. Throws DataError
// naming the row and column on any malformed value.
std::vector<RawRecord> ParseCsv(const std::filesystem::path& path);
std::vector<RawRecord> ParseCsv(std::istream& in);

// Writes records in the same schema, with a leading 1-based id column.
void WriteRecordsCsv(const std::vector<RawRecord>& records,
                     const std::filesystem::path& path);

// Dumps a preprocessed matrix with the given column names plus `stroke`.
void WriteFeatureCsv(const Matrix& features, const std::vector<double>& labels,
                     const std::vector<std::string>& column_names,
                     const std::filesystem::path& path);

}  // namespace fedfront::data

#endif  // FEDFRONT_DATA_CSV_H_
