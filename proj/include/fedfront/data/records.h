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

#ifndef FEDFRONT_DATA_RECORDS_H_
#define FEDFRONT_DATA_RECORDS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fedfront::data {

// Category vocabularies of the stroke dataset. Enumerator order is the
// lexical (byte-wise) order of the raw strings, so the first enumerator of
// each is the one-hot reference category.
enum class Gender { kFemale, kMale, kOther };
enum class EverMarried { kNo, kYes };
enum class WorkType { kGovtJob, kNeverWorked, kPrivate, kSelfEmployed, kChildren };
enum class Residence { kRural, kUrban };
enum class SmokingStatus { kUnknown, kFormerlySmoked, kNeverSmoked, kSmokes };

inline constexpr std::array<std::string_view, 3> kGenderNames = {
    "Female", "Male", "Other"};
inline constexpr std::array<std::string_view, 2> kEverMarriedNames = {"No",
                                                                      "Yes"};
inline constexpr std::array<std::string_view, 5> kWorkTypeNames = {
    "Govt_job", "Never_worked", "Private", "Self-employed", "children"};
inline constexpr std::array<std::string_view, 2> kResidenceNames = {"Rural",
                                                                    "Urban"};
inline constexpr std::array<std::string_view, 4> kSmokingNames = {
    "Unknown", "formerly smoked", "never smoked", "smokes"};

struct RawRecord {
  Gender gender = Gender::kFemale;
  double age = 0.0;
  int hypertension = 0;
  int heart_disease = 0;
  EverMarried ever_married = EverMarried::kNo;
  WorkType work_type = WorkType::kPrivate;
  Residence residence = Residence::kUrban;
  double avg_glucose_level = 0.0;
  std::optional<double> bmi;
  SmokingStatus smoking_status = SmokingStatus::kUnknown;
  int stroke = 0;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

std::vector<RawRecord> DropOtherGender(const std::vector<RawRecord>& records);

std::size_t CountPositives(const std::vector<RawRecord>& records);

}  // namespace fedfront::data

#endif  // FEDFRONT_DATA_RECORDS_H_
