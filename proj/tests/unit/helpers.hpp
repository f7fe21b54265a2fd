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

#ifndef DPMR_TESTS_HELPERS_HPP_
#define DPMR_TESTS_HELPERS_HPP_

#include <cmath>
#include <cstdint>
#include <vector>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"
#include "dpmr/verification.hpp"

namespace dpmr::testing {

inline Dataset random_data(std::size_t n, std::size_t d, std::uint64_t seed,
                           double bound = 2.0) {
  RngStream rng(seed, 0x7e57);
  return random_bounded_dataset(n, d, bound, rng);
}

inline Theta random_theta(std::size_t d, RngStream& rng, double spread = 3.0) {
  Theta t(d);
  t.mu = spread * (2.0 * rng.uniform_open01() - 1.0);
  for (double& b : t.beta) b = spread * (2.0 * rng.uniform_open01() - 1.0);
  return t;
}

inline Theta shifted(Theta t, std::size_t j, double h) {
  if (j == 0) {
    t.mu += h;
  } else {
    t.beta[j - 1] += h;
  }
  return t;
}

inline double component(const Theta& t, std::size_t j) {
  return j == 0 ? t.mu : t.beta[j - 1];
}

}  // namespace dpmr::testing

#endif  // DPMR_TESTS_HELPERS_HPP_
