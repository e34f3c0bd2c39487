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

#include "fedfront/data/records.h"

#include <algorithm>

namespace fedfront::data {

std::vector<RawRecord> DropOtherGender(const std::vector<RawRecord>& records) {
  std::vector<RawRecord> out;
  out.reserve(records.size());
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [](const RawRecord& r) { return r.gender != Gender::kOther; });
  return out;
}

std::size_t CountPositives(const std::vector<RawRecord>& records) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const RawRecord& r) { return r.stroke == 1; }));
}

}  // namespace fedfront::data
