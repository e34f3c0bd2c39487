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

#ifndef FEDFRONT_HARNESS_REPORT_H_
#define FEDFRONT_HARNESS_REPORT_H_

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "fedfront/harness/metrics.h"

namespace fedfront::harness {

inline constexpr const char* kMetricsHeader =
    "stage,mu,sigma,clip,seed,epsilon,accuracy,recall,precision,f1";

// Reals with six decimals; failed rows carry ":error" on the stage label.
std::string FormatMetricsCsv(const std::vector<MetricsRow>& rows);
void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::filesystem::path& path);

// Throws DataError on a malformed header or row.
std::vector<MetricsRow> ReadMetricsCsv(std::istream& in);
std::vector<MetricsRow> ReadMetricsCsv(const std::filesystem::path& path);

struct FrontierPoint {
  double epsilon = 0.0;
  double recall = 0.0;
  double sigma = 0.0;
};

// One polyline: all rows sharing (stage, C), points sorted by epsilon.
struct FrontierSeries {
  std::string stage;
  double clip = 0.0;
  std::vector<FrontierPoint> points;
};

// Drops failed rows and rows with non-finite epsilon. Throws DataError when
// fewer than two distinct epsilon values remain.
std::vector<FrontierSeries> BuildFrontier(const std::vector<MetricsRow>& rows);
std::string RenderFrontierSvg(const std::vector<FrontierSeries>& series);
void EmitFrontier(const std::vector<MetricsRow>& rows,
                  const std::filesystem::path& path);

struct EpsilonHeatmap {
  std::vector<double> sigmas;  // ascending, one per row
  std::vector<double> clips;   // ascending, one per column
  // cells[i][j]: max epsilon over rows at (sigmas[i], clips[j]).
  std::vector<std::vector<double>> cells;
};

// Throws DataError if some (sigma, C) combination has no rows.
EpsilonHeatmap BuildHeatmap(const std::vector<MetricsRow>& rows);
std::string RenderHeatmapSvg(const EpsilonHeatmap& map);
void EmitEpsilonHeatmap(const std::vector<MetricsRow>& rows,
                        const std::filesystem::path& path);

}  // namespace fedfront::harness

#endif  // FEDFRONT_HARNESS_REPORT_H_
