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

#include "fedfront/nn/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "fedfront/common/rng.h"

namespace fedfront::nn {
namespace {

double Sigmoid(double z) {
  double s;
  if (z >= 0.0) {
    s = 1.0 / (1.0 + std::exp(-z));
  } else {
    double e = std::exp(z);
    s = e / (1.0 + e);
  }
  // Keep outputs strictly inside (0, 1) even when the logit saturates.
  return std::clamp(s, std::numeric_limits<double>::denorm_min(),
                    std::nextafter(1.0, 0.0));
}

double Activate(Activation act, double z) {
  return act == Activation::kRelu ? std::max(0.0, z) : Sigmoid(z);
}

// Derivative of the activation expressed through pre-activation z and
// output a.
double ActivationDerivative(Activation act, double z, double a) {
  return act == Activation::kRelu ? (z > 0.0 ? 1.0 : 0.0) : a * (1.0 - a);
}

double ClampProb(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

double SampleLoss(double p, double y) {
  double pc = ClampProb(p);
  return -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
}

// dLoss/dlogit for a sigmoid output under the clamped BCE.
double OutputDelta(double p, double y) {
  if (p < kProbClamp || p > 1.0 - kProbClamp) return 0.0;
  return p - y;
}

void CheckFeatures(const ModelParams& params, const Matrix& features) {
  if (features.cols() != params.arch.input_width()) {
    throw std::invalid_argument(
        "feature width " + std::to_string(features.cols()) +
        " does not match input layer width " +
        std::to_string(params.arch.input_width()));
  }
}

void CheckLabels(const Matrix& features, std::span<const double> labels) {
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("label count does not match feature rows");
  }
}

// Per-layer pre-activations and activations for one sample.
struct Trace {
  std::vector<std::vector<double>> z;
  std::vector<std::vector<double>> a;  // a[0] is the input
};

void ForwardTrace(const ModelParams& params, std::span<const double> x,
                  Trace& trace) {
  const auto& shapes = params.shapes;
  const auto& w = params.weights;
  trace.z.resize(shapes.size());
  trace.a.resize(shapes.size() + 1);
  trace.a[0].assign(x.begin(), x.end());
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    const LayerShape& s = shapes[l];
    const auto& in = trace.a[l];
    auto& z = trace.z[l];
    auto& a = trace.a[l + 1];
    z.assign(s.out, 0.0);
    a.assign(s.out, 0.0);
    for (std::size_t o = 0; o < s.out; ++o) {
      const double* row = w.data() + s.offset + o * s.in;
      double acc = w[s.bias_offset() + o];
      for (std::size_t i = 0; i < s.in; ++i) acc += row[i] * in[i];
      z[o] = acc;
      a[o] = Activate(params.arch.activations[l], acc);
    }
  }
}

}  // namespace

ModelArchitecture ModelArchitecture::Default() {
  return {{15, 64, 32, 1},
          {Activation::kRelu, Activation::kRelu, Activation::kSigmoid}};
}

void ModelArchitecture::Validate() const {
  if (widths.size() < 2) {
    throw std::invalid_argument("architecture needs at least two widths");
  }
  if (activations.size() != widths.size() - 1) {
    throw std::invalid_argument("one activation per dense layer required");
  }
  if (std::find(widths.begin(), widths.end(), 0u) != widths.end()) {
    throw std::invalid_argument("layer widths must be positive");
  }
  if (widths.back() != 1 || activations.back() != Activation::kSigmoid) {
    throw std::invalid_argument("output layer must be one sigmoid unit");
  }
}

std::vector<LayerShape> LayerShapes(const ModelArchitecture& arch) {
  std::vector<LayerShape> shapes;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < arch.widths.size(); ++l) {
    LayerShape s{arch.widths[l + 1], arch.widths[l], offset};
    offset += s.param_count();
    shapes.push_back(s);
  }
  return shapes;
}

std::size_t ParamCount(const ModelArchitecture& arch) {
  if (arch.widths.size() < 2) {
    throw std::invalid_argument("architecture needs at least two widths");
  }
  std::size_t total = 0;
  for (const LayerShape& s : LayerShapes(arch)) total += s.param_count();
  return total;
}

ModelParams::ModelParams(ModelArchitecture a)
    : arch(std::move(a)), shapes(LayerShapes(arch)) {
  arch.Validate();
  weights.assign(ParamCount(arch), 0.0);
}

ModelParams::ModelParams(ModelArchitecture a, std::vector<double> w)
    : ModelParams(std::move(a)) {
  if (w.size() != weights.size()) {
    throw std::invalid_argument("weight vector length " +
                                std::to_string(w.size()) + " != " +
                                std::to_string(weights.size()));
  }
  weights = std::move(w);
}

bool ModelParams::AllFinite() const {
  return std::all_of(weights.begin(), weights.end(),
                     [](double v) { return std::isfinite(v); });
}

ModelParams InitModel(const ModelArchitecture& arch, std::uint64_t seed) {
  ModelParams params(arch);
  Rng rng = MakeRng(seed, {0x1417});
  for (const LayerShape& s : params.shapes) {
    double bound = std::sqrt(6.0 / static_cast<double>(s.in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (std::size_t k = 0; k < s.weight_count(); ++k) {
      params.weights[s.offset + k] = dist(rng);
    }
  }
  return params;
}

double ForwardRow(const ModelParams& params, std::span<const double> x) {
  if (x.size() != params.arch.input_width()) {
    throw std::invalid_argument("feature width does not match input layer");
  }
  Trace trace;
  ForwardTrace(params, x, trace);
  return trace.a.back()[0];
}

std::vector<double> Forward(const ModelParams& params, const Matrix& features) {
  CheckFeatures(params, features);
  std::vector<double> out(features.rows());
  Trace trace;
  for (std::size_t r = 0; r < features.rows(); ++r) {
    ForwardTrace(params, features.row(r), trace);
    out[r] = trace.a.back()[0];
  }
  return out;
}

double BceLoss(std::span<const double> predictions,
               std::span<const double> labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("BceLoss: length mismatch");
  }
  if (predictions.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    total += SampleLoss(predictions[i], labels[i]);
  }
  return total / static_cast<double>(predictions.size());
}

Matrix PerSampleGradients(const ModelParams& params, const Matrix& features,
                          std::span<const double> labels,
                          std::vector<double>* losses) {
  CheckFeatures(params, features);
  CheckLabels(features, labels);
  const auto& shapes = params.shapes;
  const auto& acts = params.arch.activations;
  const auto& w = params.weights;
  Matrix grads(features.rows(), params.size());
  if (losses != nullptr) losses->assign(features.rows(), 0.0);

  Trace trace;
  std::vector<double> delta, prev_delta;
  for (std::size_t r = 0; r < features.rows(); ++r) {
    ForwardTrace(params, features.row(r), trace);
    double p = trace.a.back()[0];
    if (losses != nullptr) (*losses)[r] = SampleLoss(p, labels[r]);
    auto g = grads.row(r);

    delta.assign(1, OutputDelta(p, labels[r]));
    for (std::size_t l = shapes.size(); l-- > 0;) {
      const LayerShape& s = shapes[l];
      const auto& in = trace.a[l];
      for (std::size_t o = 0; o < s.out; ++o) {
        double d = delta[o];
        g[s.bias_offset() + o] = d;
        if (d == 0.0) continue;
        double* grow = g.data() + s.offset + o * s.in;
        for (std::size_t i = 0; i < s.in; ++i) grow[i] = d * in[i];
      }
      if (l == 0) break;
      prev_delta.assign(s.in, 0.0);
      for (std::size_t o = 0; o < s.out; ++o) {
        double d = delta[o];
        if (d == 0.0) continue;
        const double* wrow = w.data() + s.offset + o * s.in;
        for (std::size_t i = 0; i < s.in; ++i) prev_delta[i] += wrow[i] * d;
      }
      for (std::size_t i = 0; i < s.in; ++i) {
        prev_delta[i] *= ActivationDerivative(acts[l - 1], trace.z[l - 1][i],
                                              trace.a[l][i]);
      }
      delta.swap(prev_delta);
    }
  }
  return grads;
}

std::vector<double> BatchGradient(const ModelParams& params,
                                  const Matrix& features,
                                  std::span<const double> labels) {
  CheckFeatures(params, features);
  CheckLabels(features, labels);
  const auto& shapes = params.shapes;
  const auto& acts = params.arch.activations;
  const auto& w = params.weights;
  const std::size_t n = features.rows();
  std::vector<double> grad(params.size(), 0.0);
  if (n == 0) return grad;

  // Layer-wise activation matrices for the whole batch.
  std::vector<Matrix> z(shapes.size());
  std::vector<Matrix> a(shapes.size() + 1);
  a[0] = features;
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    const LayerShape& s = shapes[l];
    z[l] = Matrix(n, s.out);
    a[l + 1] = Matrix(n, s.out);
    for (std::size_t o = 0; o < s.out; ++o) {
      const double* wrow = w.data() + s.offset + o * s.in;
      double b = w[s.bias_offset() + o];
      for (std::size_t r = 0; r < n; ++r) {
        double acc = b;
        for (std::size_t i = 0; i < s.in; ++i) acc += wrow[i] * a[l](r, i);
        z[l](r, o) = acc;
        a[l + 1](r, o) = Activate(acts[l], acc);
      }
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix delta(n, 1);
  for (std::size_t r = 0; r < n; ++r) {
    delta(r, 0) = OutputDelta(a.back()(r, 0), labels[r]) * inv_n;
  }
  for (std::size_t l = shapes.size(); l-- > 0;) {
    const LayerShape& s = shapes[l];
    for (std::size_t o = 0; o < s.out; ++o) {
      double* grow = grad.data() + s.offset + o * s.in;
      double bsum = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        double d = delta(r, o);
        bsum += d;
        for (std::size_t i = 0; i < s.in; ++i) grow[i] += d * a[l](r, i);
      }
      grad[s.bias_offset() + o] = bsum;
    }
    if (l == 0) break;
    Matrix prev(n, s.in);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < s.in; ++i) {
        double acc = 0.0;
        for (std::size_t o = 0; o < s.out; ++o) {
          acc += w[s.offset + o * s.in + i] * delta(r, o);
        }
        prev(r, i) = acc * ActivationDerivative(acts[l - 1], z[l - 1](r, i),
                                                a[l](r, i));
      }
    }
    delta = std::move(prev);
  }
  return grad;
}

}  // namespace fedfront::nn
