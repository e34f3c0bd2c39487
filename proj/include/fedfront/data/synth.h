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

#ifndef FEDFRONT_DATA_SYNTH_H_
#define FEDFRONT_DATA_SYNTH_H_

#include <cstdint>
#include <vector>

#include "fedfront/data/records.h"

namespace fedfront::data {

// Schema-valid stand-in for the stroke dataset. Exactly
// round(n * positive_rate) records are positive; positives have age and
// glucose shifted up by one standard deviation. Categories are uniform,
// genders are Male/Female only, and about 4% of bmi values are missing.
std::vector<RawRecord> SynthDataset(std::size_t n, double positive_rate,
                                    std::uint64_t seed);

}  // namespace fedfront::data

#endif  // FEDFRONT_DATA_SYNTH_H_
