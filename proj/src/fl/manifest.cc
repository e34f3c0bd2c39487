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

#include "fedfront/fl/manifest.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fedfront::fl {

RunManifest::RunManifest() { Set("software_version", std::string(kVersion)); }

void RunManifest::Set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void RunManifest::Set(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  Set(key, os.str());
}

void RunManifest::Set(const std::string& key, long long value) {
  Set(key, std::to_string(value));
}

const std::string* RunManifest::Get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string RunManifest::ToString() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + "=" + v + "\n";
  return out;
}

void RunManifest::Write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << ToString();
}

}  // namespace fedfront::fl
