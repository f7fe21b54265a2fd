//
// Copyright 2026 The dpmedreg Authors
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
//

#ifndef DPMR_CLI_MANIFEST_HPP_
#define DPMR_CLI_MANIFEST_HPP_

// key=value run manifests and content fingerprints.

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dpmr/datagen.hpp"

namespace dpmr::cli {

// 64-bit FNV-1a over n, d and the bit patterns of every value.
std::uint64_t fingerprint(const Table& table);

std::string hex64(std::uint64_t v);

class Manifest {
 public:
  void set(const std::string& key, std::string value);
  void set(const std::string& key, double value);
  void set_count(const std::string& key, std::uint64_t value);

  // Wall time is excluded from the run id so repeated runs share one id.
  void set_wall_seconds(double seconds, bool timing);

  // Hash of every entry except the wall time.
  std::string run_id() const;

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::string wall_ = "NA";
};

}  // namespace dpmr::cli

#endif  // DPMR_CLI_MANIFEST_HPP_
