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

#ifndef FEDFRONT_COMMON_ERROR_H_
#define FEDFRONT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace fedfront {

// Malformed or unusable input data (bad CSV, out-of-vocabulary category,
// degenerate column). Argument/shape misuse uses std::invalid_argument.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fedfront

#endif  // FEDFRONT_COMMON_ERROR_H_
