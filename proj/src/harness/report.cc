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

#include "fedfront/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fedfront/common/error.h"

namespace fedfront::harness {
namespace {

std::string Fixed(double v, int digits = 6) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void WriteText(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

double ParseField(const std::string& s, std::size_t line, const char* col) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("metrics CSV line " + std::to_string(line) + ", column '" +
                    col + "': unparseable '" + s + "'");
  }
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string FormatMetricsCsv(const std::vector<MetricsRow>& rows) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const MetricsRow& r : rows) {
    out += r.stage + (r.failed ? ":error" : "") + "," + Fixed(r.mu) + "," +
           Fixed(r.sigma) + "," + Fixed(r.clip) + "," +
           std::to_string(r.seed) + "," + Fixed(r.epsilon) + "," +
           Fixed(r.metrics.accuracy) + "," + Fixed(r.metrics.recall) + "," +
           Fixed(r.metrics.precision) + "," + Fixed(r.metrics.f1) + "\n";
  }
  return out;
}

void WriteMetricsCsv(const std::vector<MetricsRow>& rows,
                     const std::filesystem::path& path) {
  WriteText(FormatMetricsCsv(rows), path);
}

std::vector<MetricsRow> ReadMetricsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("metrics CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kMetricsHeader) {
    throw DataError("metrics CSV header mismatch: '" + line + "'");
  }
  static const char* kCols[] = {"stage",    "mu",       "sigma",  "clip",
                                "seed",     "epsilon",  "accuracy", "recall",
                                "precision", "f1"};
  std::vector<MetricsRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 10) {
      throw DataError("metrics CSV line " + std::to_string(line_no) +
                      ": expected 10 fields");
    }
    MetricsRow r;
    r.stage = f[0];
    const std::string suffix = ":error";
    if (r.stage.size() > suffix.size() &&
        r.stage.compare(r.stage.size() - suffix.size(), suffix.size(),
                        suffix) == 0) {
      r.failed = true;
      r.stage.resize(r.stage.size() - suffix.size());
    }
    r.mu = ParseField(f[1], line_no, kCols[1]);
    r.sigma = ParseField(f[2], line_no, kCols[2]);
    r.clip = ParseField(f[3], line_no, kCols[3]);
    try {
      std::size_t used = 0;
      r.seed = std::stoull(f[4], &used);
      if (used != f[4].size()) throw std::invalid_argument(f[4]);
    } catch (const std::exception&) {
      throw DataError("metrics CSV line " + std::to_string(line_no) +
                      ", column 'seed': unparseable '" + f[4] + "'");
    }
    r.epsilon = ParseField(f[5], line_no, kCols[5]);
    r.metrics.accuracy = ParseField(f[6], line_no, kCols[6]);
    r.metrics.recall = ParseField(f[7], line_no, kCols[7]);
    r.metrics.precision = ParseField(f[8], line_no, kCols[8]);
    r.metrics.f1 = ParseField(f[9], line_no, kCols[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<MetricsRow> ReadMetricsCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return ReadMetricsCsv(in);
}

std::vector<FrontierSeries> BuildFrontier(const std::vector<MetricsRow>& rows) {
  std::map<std::pair<std::string, double>, FrontierSeries> by_key;
  std::set<double> distinct_eps;
  for (const MetricsRow& r : rows) {
    if (r.failed || !std::isfinite(r.epsilon)) continue;
    auto& s = by_key[{r.stage, r.clip}];
    s.stage = r.stage;
    s.clip = r.clip;
    s.points.push_back({r.epsilon, r.metrics.recall, r.sigma});
    distinct_eps.insert(r.epsilon);
  }
  if (distinct_eps.size() < 2) {
    throw DataError("frontier needs rows with at least two distinct epsilon");
  }
  std::vector<FrontierSeries> out;
  for (auto& [key, s] : by_key) {
    std::stable_sort(s.points.begin(), s.points.end(),
                     [](const FrontierPoint& a, const FrontierPoint& b) {
                       return a.epsilon < b.epsilon;
                     });
    out.push_back(std::move(s));
  }
  return out;
}

std::string RenderFrontierSvg(const std::vector<FrontierSeries>& series) {
  constexpr double kW = 720, kH = 480, kLeft = 70, kRight = 200, kTop = 40,
                   kBottom = 60;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      lo = std::min(lo, p.epsilon);
      hi = std::max(hi, p.epsilon);
    }
  }
  // Log axis when epsilon spans more than a decade and stays positive.
  const bool log_x = lo > 0 && hi / lo > 10.0;
  auto tx = [&](double e) {
    double a = log_x ? std::log10(lo) : lo;
    double b = log_x ? std::log10(hi) : hi;
    double v = log_x ? std::log10(e) : e;
    double t = b > a ? (v - a) / (b - a) : 0.5;
    return kLeft + t * (kW - kLeft - kRight);
  };
  auto ty = [&](double recall) {
    return kTop + (1.0 - recall) * (kH - kTop - kBottom);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
     << "\">\n";
  os << "<title>Recall vs privacy budget</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\""
     << kW - kRight << "\" y2=\"" << kH - kBottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
     << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 15
     << "\" text-anchor=\"middle\" font-size=\"13\">privacy budget epsilon"
     << (log_x ? " (log scale)" : "") << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kTop + kH - kBottom) / 2
     << "\" font-size=\"13\" transform=\"rotate(-90 18 "
     << (kTop + kH - kBottom) / 2 << ")\" text-anchor=\"middle\">recall</text>\n";
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << ty(r) + 4
       << "\" font-size=\"10\" text-anchor=\"end\">" << Fixed(r, 2)
       << "</text>\n";
  }
  os << "<text x=\"" << tx(lo) << "\" y=\"" << kH - kBottom + 15
     << "\" font-size=\"10\" text-anchor=\"middle\">" << Fixed(lo, 2)
     << "</text>\n";
  os << "<text x=\"" << tx(hi) << "\" y=\"" << kH - kBottom + 15
     << "\" font-size=\"10\" text-anchor=\"middle\">" << Fixed(hi, 2)
     << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const FrontierSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    std::string name = s.stage + " C=" + Fixed(s.clip);
    os << "<g class=\"series\" data-series=\"" << XmlEscape(name)
       << "\" data-stage=\"" << XmlEscape(s.stage) << "\" data-clip=\""
       << Fixed(s.clip) << "\">\n";
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      os << (i ? " " : "") << Fixed(tx(s.points[i].epsilon), 2) << ','
         << Fixed(ty(s.points[i].recall), 2);
    }
    os << "\"/>\n";
    for (const FrontierPoint& p : s.points) {
      os << "<circle class=\"point\" cx=\"" << Fixed(tx(p.epsilon), 2)
         << "\" cy=\"" << Fixed(ty(p.recall), 2) << "\" r=\"3.5\" fill=\""
         << color << "\" data-epsilon=\"" << Fixed(p.epsilon)
         << "\" data-recall=\"" << Fixed(p.recall) << "\" data-sigma=\""
         << Fixed(p.sigma) << "\"/>\n";
      os << "<text x=\"" << Fixed(tx(p.epsilon) + 5, 2) << "\" y=\""
         << Fixed(ty(p.recall) - 5, 2) << "\" font-size=\"9\">&#963;="
         << Fixed(p.sigma, 2) << "</text>\n";
    }
    os << "</g>\n";
    double ly = kTop + 18.0 * static_cast<double>(k);
    os << "<rect x=\"" << kW - kRight + 15 << "\" y=\"" << ly
       << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n";
    os << "<text x=\"" << kW - kRight + 32 << "\" y=\"" << ly + 10
       << "\" font-size=\"10\">" << XmlEscape(name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void EmitFrontier(const std::vector<MetricsRow>& rows,
                  const std::filesystem::path& path) {
  WriteText(RenderFrontierSvg(BuildFrontier(rows)), path);
}

EpsilonHeatmap BuildHeatmap(const std::vector<MetricsRow>& rows) {
  std::set<double> sigmas, clips;
  std::map<std::pair<double, double>, double> cell;
  for (const MetricsRow& r : rows) {
    if (r.failed) continue;
    sigmas.insert(r.sigma);
    clips.insert(r.clip);
    auto [it, inserted] = cell.try_emplace({r.sigma, r.clip}, r.epsilon);
    if (!inserted) it->second = std::max(it->second, r.epsilon);
  }
  if (cell.empty()) throw DataError("heatmap needs at least one metrics row");
  EpsilonHeatmap map;
  map.sigmas.assign(sigmas.begin(), sigmas.end());
  map.clips.assign(clips.begin(), clips.end());
  for (double s : map.sigmas) {
    std::vector<double> line;
    for (double c : map.clips) {
      auto it = cell.find({s, c});
      if (it == cell.end()) {
        throw DataError("ragged grid: no rows for sigma=" + Fixed(s) +
                        ", C=" + Fixed(c));
      }
      line.push_back(it->second);
    }
    map.cells.push_back(std::move(line));
  }
  return map;
}

std::string RenderHeatmapSvg(const EpsilonHeatmap& map) {
  constexpr double kCell = 90, kLeft = 110, kTop = 60;
  const double w = kLeft + kCell * static_cast<double>(map.clips.size()) + 40;
  const double h = kTop + kCell * static_cast<double>(map.sigmas.size()) + 90;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& line : map.cells) {
    for (double e : line) {
      if (!std::isfinite(e) || e <= 0) continue;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  // Darker = smaller epsilon (stronger privacy); log-scaled intensity.
  auto shade = [&](double e) {
    if (!std::isfinite(e)) return std::string("#f0f0f0");
    double t = 0.5;
    if (hi > lo && e > 0) t = (std::log(e) - std::log(lo)) / (std::log(hi) - std::log(lo));
    int r = static_cast<int>(20 + 225 * t);
    int g = static_cast<int>(30 + 190 * t);
    int b = static_cast<int>(90 + 120 * t);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
     << "\">\n";
  os << "<title>Privacy budget by noise multiplier and clipping norm</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"13\">epsilon by "
        "noise_multiplier (rows) and max_grad_norm (columns)</text>\n";
  for (std::size_t j = 0; j < map.clips.size(); ++j) {
    os << "<text x=\"" << kLeft + kCell * (j + 0.5) << "\" y=\"" << kTop - 8
       << "\" font-size=\"11\" text-anchor=\"middle\">C=" << Fixed(map.clips[j], 2)
       << "</text>\n";
  }
  for (std::size_t i = 0; i < map.sigmas.size(); ++i) {
    double y = kTop + kCell * static_cast<double>(i);
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + kCell / 2 + 4
       << "\" font-size=\"11\" text-anchor=\"end\">&#963;="
       << Fixed(map.sigmas[i], 2) << "</text>\n";
    for (std::size_t j = 0; j < map.clips.size(); ++j) {
      double x = kLeft + kCell * static_cast<double>(j);
      double e = map.cells[i][j];
      os << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y
         << "\" width=\"" << kCell << "\" height=\"" << kCell << "\" fill=\""
         << shade(e) << "\" stroke=\"white\" data-sigma=\""
         << Fixed(map.sigmas[i]) << "\" data-clip=\"" << Fixed(map.clips[j])
         << "\" data-epsilon=\"" << Fixed(e) << "\"/>\n";
      os << "<text class=\"annotation\" x=\"" << x + kCell / 2 << "\" y=\""
         << y + kCell / 2 + 4
         << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"black\">"
         << Fixed(e, 2) << "</text>\n";
    }
  }
  os << "<text class=\"note\" x=\"10\" y=\"" << h - 40
     << "\" font-size=\"10\">Note: under Renyi-DP accounting of the "
        "subsampled Gaussian mechanism, epsilon depends on the noise "
        "multiplier,</text>\n";
  os << "<text class=\"note\" x=\"10\" y=\"" << h - 26
     << "\" font-size=\"10\">sampling rate, step count and delta only; it "
        "does not depend on max_grad_norm, so every cell in a row is "
        "equal.</text>\n";
  os << "</svg>\n";
  return os.str();
}

void EmitEpsilonHeatmap(const std::vector<MetricsRow>& rows,
                        const std::filesystem::path& path) {
  WriteText(RenderHeatmapSvg(BuildHeatmap(rows)), path);
}

}  // namespace fedfront::harness
