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

#ifndef DPMR_RNG_HPP_
#define DPMR_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dpmr {

// Seedable stream of uniform bits. The engine (mt19937_64) and its seeding
// (std::seed_seq over the 32-bit halves of seed and stream id) are both fully
// specified by the standard, and the conversions below use only integer
// arithmetic and exact scaling, so a (seed, stream) pair yields the same
// doubles on every conforming platform.
//
// A stream is single-owner; give parallel work distinct stream ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53-bit granularity.
  double uniform_open01();

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Independent stream keyed by `tag`, same seed.
  RngStream substream(std::uint64_t tag) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// Order-sensitive mix of integer keys into one stream id.
std::uint64_t stream_id(std::initializer_list<std::uint64_t> keys);

}  // namespace dpmr

#endif  // DPMR_RNG_HPP_
