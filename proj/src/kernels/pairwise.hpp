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

#ifndef DPMR_KERNELS_PAIRWISE_HPP_
#define DPMR_KERNELS_PAIRWISE_HPP_

#include <cstddef>

namespace dpmr::kernels::detail {

// Leaf size for pairwise reductions. Splits always land on multiples of
// kBlock so every ISA sees the same leaves.
inline constexpr std::size_t kBlock = 256;

// Pairwise (cascade) reduction over [begin, end). `leaf(b, e)` reduces one
// block of at most kBlock elements; Acc must support operator+.
template <class Acc, class Leaf>
Acc pairwise(std::size_t begin, std::size_t end, const Leaf& leaf) {
  const std::size_t len = end - begin;
  if (len <= kBlock) return leaf(begin, end);
  const std::size_t blocks = (len + kBlock - 1) / kBlock;
  const std::size_t mid = begin + (blocks / 2) * kBlock;
  return pairwise<Acc>(begin, mid, leaf) + pairwise<Acc>(mid, end, leaf);
}

}  // namespace dpmr::kernels::detail

#endif  // DPMR_KERNELS_PAIRWISE_HPP_
