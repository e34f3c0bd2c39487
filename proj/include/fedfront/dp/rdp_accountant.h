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

#ifndef FEDFRONT_DP_RDP_ACCOUNTANT_H_
#define FEDFRONT_DP_RDP_ACCOUNTANT_H_

#include <cstdint>
#include <vector>

namespace fedfront::dp {

// Renyi divergence of order alpha for one step of the Poisson-subsampled
// Gaussian mechanism with sampling rate q and noise multiplier sigma.
// Integer orders use the exact binomial expansion; fractional orders use
// the two-sided erfc series. q = 1 reduces to alpha / (2 sigma^2).
double SubsampledGaussianRdp(double q, double sigma, double alpha);

// Default order grid: 1.25, 1.5, ..., 4.75 and the integers 5..63.
std::vector<double> DefaultOrders();

struct PrivacySpend {
  double epsilon = 0.0;
  double delta = 0.0;
  double optimal_order = 0.0;
  bool unbounded = false;  // some step had sigma = 0
};

class RdpAccountant {
 public:
  explicit RdpAccountant(std::vector<double> orders = DefaultOrders());

  // Composes `steps` identical mechanism applications. sigma = 0 marks the
  // ledger unbounded instead of throwing.
  void Step(double sigma, double q, std::int64_t steps = 1);

  // eps = min over orders of rdp(a) + ln(1/delta) / (a - 1).
  PrivacySpend GetEpsilon(double delta) const;

  const std::vector<double>& orders() const { return orders_; }
  const std::vector<double>& accumulated_rdp() const { return rdp_; }
  std::int64_t steps_taken() const { return steps_; }
  bool unbounded() const { return unbounded_; }

 private:
  std::vector<double> orders_;
  std::vector<double> rdp_;
  std::int64_t steps_ = 0;
  bool unbounded_ = false;
};

}  // namespace fedfront::dp

#endif  // FEDFRONT_DP_RDP_ACCOUNTANT_H_
