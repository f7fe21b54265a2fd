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

#ifndef DPMR_SAMPLING_HPP_
#define DPMR_SAMPLING_HPP_

// Every random draw in the library goes through these samplers. All of them
// are inverse-CDF constructions (one uniform per variate, no rejection), so
// replays are bit-identical.

#include <cstddef>
#include <vector>

#include "dpmr/rng.hpp"

namespace dpmr {

enum class NoiseKind { kLaplaceIid, kL1GammaDirection };

struct NoiseVector {
  std::vector<double> values;
  // Laplace scale c for kLaplaceIid; Gamma scale 4/epsilon for
  // kL1GammaDirection.
  double scale = 0.0;
  NoiseKind kind = NoiseKind::kLaplaceIid;
  // The Gamma draw used as the L1 radius (kL1GammaDirection only).
  double radius = 0.0;

  double l1_norm() const;
};

// Laplace(0, scale) quantile function, u in (0, 1).
double laplace_quantile(double u, double scale);
double laplace_cdf(double x, double scale);

// Single Laplace(0, scale) variate.
double draw_laplace(double scale, RngStream& rng);

// Single Gamma(shape, scale) variate for integer shape, as the sum of `shape`
// exponential variates with mean `scale`.
double draw_gamma_integer_shape(std::size_t shape, double scale,
                                RngStream& rng);

// k i.i.d. draws from the density (1/2c) exp(-|x|/c).
NoiseVector sample_laplace(double scale, std::size_t k, RngStream& rng);

// Objective-perturbation vector b in `dim` = d+1 dimensions with density
// proportional to exp(-epsilon ||b||_1 / 4): ||b||_1 ~ Gamma(dim, 4/epsilon)
// and a direction uniform on the L1 sphere (normalized Laplace(1) vector).
NoiseVector sample_l1_perturbation(std::size_t dim, double epsilon,
                                   RngStream& rng);

// With probability >= 1 - alpha a Gamma(d+1, 4/epsilon) draw is at most
// 4 (d+1) ln((d+1)/alpha) / epsilon.
double gamma_tail_bound(std::size_t d, double alpha, double epsilon);

}  // namespace dpmr

#endif  // DPMR_SAMPLING_HPP_
