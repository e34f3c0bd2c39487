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

#ifndef FEDFRONT_COMMON_RNG_H_
#define FEDFRONT_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fedfront {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; mixes a 64-bit value into a well-distributed one.
std::uint64_t Mix64(std::uint64_t x);

// Derives an independent stream seed from a base seed and a path of
// identifiers, e.g. DeriveSeed(seed, {client_id, round}). The result depends
// only on the values, never on call order.
std::uint64_t DeriveSeed(std::uint64_t base,
                         std::initializer_list<std::uint64_t> path);

inline Rng MakeRng(std::uint64_t base,
                   std::initializer_list<std::uint64_t> path = {}) {
  return Rng(DeriveSeed(base, path));
}

}  // namespace fedfront

#endif  // FEDFRONT_COMMON_RNG_H_
