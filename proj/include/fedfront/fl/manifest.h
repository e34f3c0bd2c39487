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

#ifndef FEDFRONT_FL_MANIFEST_H_
#define FEDFRONT_FL_MANIFEST_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace fedfront::fl {

inline constexpr const char* kVersion = "0.1.0";

// Ordered key=value run record written next to every result.
class RunManifest {
 public:
  RunManifest();

  void Set(const std::string& key, const std::string& value);
  void Set(const std::string& key, double value);
  void Set(const std::string& key, long long value);
  void Set(const std::string& key, std::size_t value) {
    Set(key, static_cast<long long>(value));
  }

  const std::string* Get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  std::string ToString() const;
  void Write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace fedfront::fl

#endif  // FEDFRONT_FL_MANIFEST_H_
