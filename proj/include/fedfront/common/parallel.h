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

#ifndef FEDFRONT_COMMON_PARALLEL_H_
#define FEDFRONT_COMMON_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace fedfront {

// Worker count from FEDFRONT_THREADS (0 or unset = hardware concurrency).
std::size_t ConfiguredThreads();

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// executed exactly once; the first exception thrown is rethrown after all
// workers join.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace fedfront

#endif  // FEDFRONT_COMMON_PARALLEL_H_
