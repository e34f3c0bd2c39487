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

#ifndef FEDFRONT_NN_MODEL_H_
#define FEDFRONT_NN_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fedfront/common/matrix.h"

namespace fedfront::nn {

enum class Activation { kRelu, kSigmoid };

// Fully connected feed-forward network shape. widths = (input, hidden...,
// output); activations has one entry per dense layer.
struct ModelArchitecture {
  std::vector<std::size_t> widths;
  std::vector<Activation> activations;

  // 15 -> 64 (ReLU) -> 32 (ReLU) -> 1 (sigmoid).
  static ModelArchitecture Default();

  std::size_t num_layers() const { return activations.size(); }
  std::size_t input_width() const { return widths.front(); }

  // Throws std::invalid_argument when the shape is unusable as a binary
  // classifier (fewer than two widths, mismatched activation list, output
  // layer not a single sigmoid unit).
  void Validate() const;

  friend bool operator==(const ModelArchitecture&,
                         const ModelArchitecture&) = default;
};

// Placement of one dense layer inside the flat parameter vector. The weight
// block is out x in, row-major, followed by `out` biases.
struct LayerShape {
  std::size_t out = 0;
  std::size_t in = 0;
  std::size_t offset = 0;

  std::size_t weight_count() const { return out * in; }
  std::size_t bias_offset() const { return offset + weight_count(); }
  std::size_t param_count() const { return out * in + out; }

  friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

std::vector<LayerShape> LayerShapes(const ModelArchitecture& arch);

std::size_t ParamCount(const ModelArchitecture& arch);

// Flat parameter vector plus the architecture it belongs to.
struct ModelParams {
  ModelArchitecture arch;
  std::vector<LayerShape> shapes;
  std::vector<double> weights;

  ModelParams() = default;
  explicit ModelParams(ModelArchitecture a);
  ModelParams(ModelArchitecture a, std::vector<double> w);

  std::size_t size() const { return weights.size(); }
  bool AllFinite() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Weights uniform in +-sqrt(6 / fan_in), biases zero. Deterministic in seed.
ModelParams InitModel(const ModelArchitecture& arch, std::uint64_t seed);

// Output probabilities, one per row of `features`.
std::vector<double> Forward(const ModelParams& params, const Matrix& features);
double ForwardRow(const ModelParams& params, std::span<const double> x);

inline constexpr double kProbClamp = 1e-7;

// Mean binary cross-entropy with predictions clamped to
// [kProbClamp, 1 - kProbClamp].
double BceLoss(std::span<const double> predictions,
               std::span<const double> labels);

// Row i is the gradient of the BCE loss of sample i alone. If `losses` is
// non-null it receives the per-sample losses.
Matrix PerSampleGradients(const ModelParams& params, const Matrix& features,
                          std::span<const double> labels,
                          std::vector<double>* losses = nullptr);

// Gradient of the mean BCE over the batch, computed with a batched backward
// pass (independent of PerSampleGradients).
std::vector<double> BatchGradient(const ModelParams& params,
                                  const Matrix& features,
                                  std::span<const double> labels);

}  // namespace fedfront::nn

#endif  // FEDFRONT_NN_MODEL_H_
