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

#include "fedfront/dp/rdp_accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fedfront::dp {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log(exp(a) - exp(b)), requires a >= b.
double LogSub(double a, double b) {
  if (b == kNegInf) return a;
  if (a == b) return kNegInf;
  if (a < b) throw std::domain_error("LogSub: negative result");
  return a + std::log1p(-std::exp(b - a));
}

double LogErfc(double x) {
  if (x < 25.0) return std::log(std::erfc(x));
  // Asymptotic expansion; erfc underflows past ~26.5.
  double x2 = x * x;
  return -x2 - std::log(x) - 0.5 * std::log(std::numbers::pi) +
         std::log1p(-0.5 / x2 + 0.75 / (x2 * x2) - 1.875 / (x2 * x2 * x2));
}

double LogBinomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double LogAInt(double q, double sigma, int alpha) {
  double log_a = kNegInf;
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  for (int i = 0; i <= alpha; ++i) {
    double term = LogBinomial(alpha, i) + i * log_q + (alpha - i) * log_1mq +
                  (static_cast<double>(i) * i - i) / (2.0 * sigma * sigma);
    log_a = LogAdd(log_a, term);
  }
  return log_a;
}

double LogAFrac(double q, double sigma, double alpha) {
  double log_a0 = kNegInf, log_a1 = kNegInf;
  const double z0 = sigma * sigma * std::log(1.0 / q - 1.0) + 0.5;
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double s2 = sigma * sigma;
  double coef = 1.0;  // binom(alpha, i), built incrementally
  for (int i = 0;; ++i) {
    if (i > 0) coef *= (alpha - (i - 1)) / static_cast<double>(i);
    double log_coef = std::log(std::abs(coef));
    double j = alpha - i;
    double log_t0 = log_coef + i * log_q + j * log_1mq;
    double log_t1 = log_coef + j * log_q + i * log_1mq;
    double log_e0 =
        std::log(0.5) + LogErfc((i - z0) / (std::numbers::sqrt2 * sigma));
    double log_e1 =
        std::log(0.5) + LogErfc((z0 - j) / (std::numbers::sqrt2 * sigma));
    double log_s0 = log_t0 + (static_cast<double>(i) * i - i) / (2.0 * s2) +
                    log_e0;
    double log_s1 = log_t1 + (j * j - j) / (2.0 * s2) + log_e1;
    if (coef > 0) {
      log_a0 = LogAdd(log_a0, log_s0);
      log_a1 = LogAdd(log_a1, log_s1);
    } else {
      log_a0 = LogSub(log_a0, log_s0);
      log_a1 = LogSub(log_a1, log_s1);
    }
    if (std::max(log_s0, log_s1) < -30.0 || coef == 0.0) break;
    if (i > 100000) throw std::runtime_error("RDP series did not converge");
  }
  return LogAdd(log_a0, log_a1);
}

}  // namespace

double SubsampledGaussianRdp(double q, double sigma, double alpha) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("sample rate must lie in (0, 1]");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(alpha > 1.0)) throw std::invalid_argument("order must be > 1");
  if (q == 1.0) return alpha / (2.0 * sigma * sigma);
  double log_a = (alpha == std::floor(alpha))
                     ? LogAInt(q, sigma, static_cast<int>(alpha))
                     : LogAFrac(q, sigma, alpha);
  return log_a / (alpha - 1.0);
}

std::vector<double> DefaultOrders() {
  std::vector<double> orders;
  for (int i = 5; i <= 19; ++i) orders.push_back(i * 0.25);
  for (int a = 5; a <= 63; ++a) orders.push_back(a);
  return orders;
}

RdpAccountant::RdpAccountant(std::vector<double> orders)
    : orders_(std::move(orders)), rdp_(orders_.size(), 0.0) {
  for (double a : orders_) {
    if (!(a > 1.0)) throw std::invalid_argument("RDP orders must be > 1");
  }
}

void RdpAccountant::Step(double sigma, double q, std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("negative step count");
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("sample rate must lie in (0, 1]");
  }
  if (steps == 0) return;
  steps_ += steps;
  if (!(sigma > 0.0)) {
    unbounded_ = true;
    return;
  }
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    rdp_[i] += static_cast<double>(steps) *
               SubsampledGaussianRdp(q, sigma, orders_[i]);
  }
}

PrivacySpend RdpAccountant::GetEpsilon(double delta) const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (orders_.empty()) throw std::invalid_argument("empty order grid");
  PrivacySpend spend;
  spend.delta = delta;
  if (unbounded_) {
    spend.epsilon = std::numeric_limits<double>::infinity();
    spend.unbounded = true;
    return spend;
  }
  if (steps_ == 0) return spend;
  spend.epsilon = std::numeric_limits<double>::infinity();
  const double log_inv_delta = std::log(1.0 / delta);
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    double eps = rdp_[i] + log_inv_delta / (orders_[i] - 1.0);
    if (eps < spend.epsilon) {
      spend.epsilon = eps;
      spend.optimal_order = orders_[i];
    }
  }
  return spend;
}

}  // namespace fedfront::dp
