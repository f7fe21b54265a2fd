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

#include "cli/manifest.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include "dpmr/csv.hpp"

namespace dpmr::cli {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void mix(std::uint64_t& h, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    h ^= (word >> (8 * byte)) & 0xffU;
    h *= kFnvPrime;
  }
}

void mix(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
}

}  // namespace

std::uint64_t fingerprint(const Table& table) {
  std::uint64_t h = kFnvOffset;
  mix(h, table.n);
  mix(h, table.d);
  for (double v : table.x) mix(h, std::bit_cast<std::uint64_t>(v));
  for (double v : table.y) mix(h, std::bit_cast<std::uint64_t>(v));
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void Manifest::set(const std::string& key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(key, std::move(value));
}

void Manifest::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void Manifest::set_count(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void Manifest::set_wall_seconds(double seconds, bool timing) {
  wall_ = timing ? format_double(seconds) : "NA";
}

std::string Manifest::run_id() const {
  std::uint64_t h = kFnvOffset;
  for (const auto& [k, v] : entries_) {
    mix(h, k);
    mix(h, std::string("="));
    mix(h, v);
    mix(h, std::string("\n"));
  }
  return hex64(h);
}

void Manifest::write(std::ostream& out) const {
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  out << "wall_seconds=" << wall_ << '\n';
  out << "run_id=" << run_id() << '\n';
}

void Manifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write(out);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace dpmr::cli
