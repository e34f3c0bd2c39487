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

#include "fedfront/data/csv.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "fedfront/common/error.h"

namespace fedfront::data {
namespace {

constexpr std::array<std::string_view, 11> kColumns = {
    "gender",         "age",       "hypertension",      "heart_disease",
    "ever_married",   "work_type", "Residence_type",    "avg_glucose_level",
    "bmi",            "smoking_status", "stroke"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i < line.size() && line[i] == '"') quoted = !quoted;
    if (i == line.size() || (line[i] == ',' && !quoted)) {
      out.push_back(Trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void Fail(std::size_t line_no, std::string_view column,
                       const std::string& msg) {
  throw DataError("row " + std::to_string(line_no) + ", column '" +
                  std::string(column) + "': " + msg);
}

double ParseReal(std::string_view text, std::size_t line_no,
                 std::string_view column) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Fail(line_no, column, "unparseable number '" + std::string(text) + "'");
  }
  return v;
}

int ParseBinary(std::string_view text, std::size_t line_no,
                std::string_view column) {
  double v = ParseReal(text, line_no, column);
  if (v != 0.0 && v != 1.0) {
    Fail(line_no, column, "expected 0 or 1, got '" + std::string(text) + "'");
  }
  return static_cast<int>(v);
}

template <typename Enum, std::size_t N>
Enum ParseCategory(std::string_view text,
                   const std::array<std::string_view, N>& names,
                   std::size_t line_no, std::string_view column) {
  auto it = std::find(names.begin(), names.end(), text);
  if (it == names.end()) {
    Fail(line_no, column, "unknown category '" + std::string(text) + "'");
  }
  return static_cast<Enum>(it - names.begin());
}

double ParsePositive(std::string_view text, std::size_t line_no,
                     std::string_view column) {
  double v = ParseReal(text, line_no, column);
  if (!(v > 0.0)) Fail(line_no, column, "value must be positive");
  return v;
}

template <typename Enum, std::size_t N>
std::string_view Name(Enum e, const std::array<std::string_view, N>& names) {
  return names[static_cast<std::size_t>(e)];
}

std::string FormatReal(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::vector<RawRecord> ParseCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV: no header row");
  std::vector<std::string_view> header = SplitFields(line);
  // Strip a UTF-8 byte-order mark from the first header cell.
  std::string first(header.empty() ? "" : header[0]);
  if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
  std::vector<std::string> names;
  names.push_back(first);
  for (std::size_t i = 1; i < header.size(); ++i) {
    names.emplace_back(header[i]);
  }
  std::size_t skip = (!names.empty() && names[0] == "id") ? 1 : 0;
  if (names.size() != kColumns.size() + skip) {
    throw DataError("header has " + std::to_string(names.size()) +
                    " columns, expected " +
                    std::to_string(kColumns.size() + skip));
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (names[c + skip] != kColumns[c]) {
      throw DataError("header column " + std::to_string(c + skip + 1) +
                      " is '" + names[c + skip] + "', expected '" +
                      std::string(kColumns[c]) + "'");
    }
  }

  std::vector<RawRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string_view> f = SplitFields(line);
    if (f.size() != names.size()) {
      Fail(line_no, "*",
           "expected " + std::to_string(names.size()) + " fields, got " +
               std::to_string(f.size()));
    }
    auto col = [&](std::size_t c) { return f[c + skip]; };
    RawRecord r;
    r.gender = ParseCategory<Gender>(col(0), kGenderNames, line_no, kColumns[0]);
    r.age = ParsePositive(col(1), line_no, kColumns[1]);
    r.hypertension = ParseBinary(col(2), line_no, kColumns[2]);
    r.heart_disease = ParseBinary(col(3), line_no, kColumns[3]);
    r.ever_married = ParseCategory<EverMarried>(col(4), kEverMarriedNames,
                                                line_no, kColumns[4]);
    r.work_type =
        ParseCategory<WorkType>(col(5), kWorkTypeNames, line_no, kColumns[5]);
    r.residence = ParseCategory<Residence>(col(6), kResidenceNames, line_no,
                                           kColumns[6]);
    r.avg_glucose_level = ParsePositive(col(7), line_no, kColumns[7]);
    if (col(8) != "N/A") r.bmi = ParsePositive(col(8), line_no, kColumns[8]);
    r.smoking_status = ParseCategory<SmokingStatus>(col(9), kSmokingNames,
                                                    line_no, kColumns[9]);
    r.stroke = ParseBinary(col(10), line_no, kColumns[10]);
    records.push_back(r);
  }
  return records;
}

std::vector<RawRecord> ParseCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ParseCsv(in);
}

void WriteRecordsCsv(const std::vector<RawRecord>& records,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "id";
  for (auto c : kColumns) out << ',' << c;
  out << '\n';
  for (std::size_t i = 0; i < records.size(); ++i) {
    const RawRecord& r = records[i];
    out << (i + 1) << ',' << Name(r.gender, kGenderNames) << ','
        << FormatReal(r.age) << ',' << r.hypertension << ','
        << r.heart_disease << ',' << Name(r.ever_married, kEverMarriedNames)
        << ',' << Name(r.work_type, kWorkTypeNames) << ','
        << Name(r.residence, kResidenceNames) << ','
        << FormatReal(r.avg_glucose_level) << ','
        << (r.bmi ? FormatReal(*r.bmi) : std::string("N/A")) << ','
        << Name(r.smoking_status, kSmokingNames) << ',' << r.stroke << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

void WriteFeatureCsv(const Matrix& features, const std::vector<double>& labels,
                     const std::vector<std::string>& column_names,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  for (const auto& name : column_names) out << name << ',';
  out << "stroke\n";
  for (std::size_t r = 0; r < features.rows(); ++r) {
    for (double v : features.row(r)) out << FormatReal(v) << ',';
    out << static_cast<int>(labels[r]) << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace fedfront::data
