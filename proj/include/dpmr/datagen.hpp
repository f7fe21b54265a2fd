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

#ifndef DPMR_DATAGEN_HPP_
#define DPMR_DATAGEN_HPP_

// Synthetic linear-model data with Laplace errors, and the global rescaling
// that maps raw data into the bounded domain the estimators assume.

#include <cstddef>
#include <vector>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"

namespace dpmr {

// Unconstrained data, column-major like Dataset.
struct Table {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> x;
  std::vector<double> y;

  double at(std::size_t i, std::size_t k) const { return x[k * n + i]; }
  void validate() const;
};

Table to_table(const Dataset& data);

struct GeneratorSpec {
  std::size_t n = 5000;
  double true_mu = 2.0;
  std::vector<double> true_beta{3.0, 0.0, -4.0};
  // Laplace scale of the errors; 0 gives exactly linear responses.
  double noise_scale = 2.0;
  // Each covariate is uniform on [covariate_lo, covariate_hi].
  double covariate_lo = 0.0;
  double covariate_hi = 1.0;

  std::size_t d() const { return true_beta.size(); }
  Theta truth() const { return {true_mu, true_beta}; }
  void validate() const;
};

struct Generated {
  Table table;
  Theta truth;
};

// Records are drawn in order; within a record the covariates come first,
// then the error.
Generated generate(const GeneratorSpec& spec, RngStream& rng);

struct ScalingRecord {
  double x_scale = 1.0;
  double y_scale = 1.0;
  double bound = 2.0;
};

struct Normalized {
  Dataset data;
  ScalingRecord scaling;
};

// Divides X by its largest row L1 norm when that exceeds 1, and Y by
// max|Y| / target_bound when that exceeds 1. Throws InvalidArgument when every
// covariate is zero.
Normalized normalize(const Table& table, double target_bound = 2.0);

// Coefficients in the units of the table passed to normalize.
Theta unscale_theta(const Theta& theta, const ScalingRecord& rec);

}  // namespace dpmr

#endif  // DPMR_DATAGEN_HPP_
