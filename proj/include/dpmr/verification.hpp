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

#ifndef DPMR_VERIFICATION_HPP_
#define DPMR_VERIFICATION_HPP_

// Independent oracles and probes: a brute-force grid fit for tiny instances,
// neighboring-dataset construction, and Monte-Carlo checks shared by the
// tests and the `probe` command.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"

namespace dpmr {

// Two datasets of equal n, d and B that differ in exactly one record. The
// first dataset is shared, not copied.
class NeighborPair {
 public:
  NeighborPair(std::shared_ptr<const Dataset> first,
               std::shared_ptr<const Dataset> second, std::size_t index);

  const Dataset& first() const { return *first_; }
  const Dataset& second() const { return *second_; }
  std::size_t index() const { return index_; }

  NeighborPair swapped() const { return {second_, first_, index_}; }

 private:
  std::shared_ptr<const Dataset> first_;
  std::shared_ptr<const Dataset> second_;
  std::size_t index_;
};

// Replaces record `index` of `base`. Throws InvalidArgument if the
// replacement violates the bounds or equals the original record.
NeighborPair make_neighbor_pair(std::shared_ptr<const Dataset> base,
                                std::size_t index,
                                std::span<const double> x_row, double y);

// Random index and random bounded replacement.
NeighborPair make_neighbor_pair(std::shared_ptr<const Dataset> base,
                                RngStream& rng);

// Row with ||x||_1 <= 1 (uniform radius, uniform L1 direction) and
// y uniform on [-B, B].
std::pair<std::vector<double>, double> random_bounded_record(std::size_t d,
                                                             double bound,
                                                             RngStream& rng);

Dataset random_bounded_dataset(std::size_t n, std::size_t d, double bound,
                               RngStream& rng);

NeighborPair random_neighbor_pair(std::size_t n, std::size_t d, double bound,
                                  RngStream& rng);

struct GridSpec {
  std::size_t points_per_dim = 33;
  double final_resolution = 1e-4;
  // Half-width of the first box around the origin; 0 selects 16 B.
  double initial_half_width = 0.0;
  // Adds kappa * mu^2 to the objective, matching the intercept term of the
  // objective-perturbation solver (kappa = 1/sqrt(n) there).
  double intercept_penalty = 0.0;
};

// Coarse-to-fine grid minimization of objective_l1 (+ kappa mu^2) over
// (mu, beta). Desk scale only: d <= 2, n <= 50.
Theta oracle_l1_fit(const Dataset& data, double lambda,
                    const GridSpec& grid = {});

// Objective minimized by oracle_l1_fit, evaluated with a plain scalar loop.
double oracle_objective(const Theta& theta, const Dataset& data, double lambda,
                        double intercept_penalty);

// One line of a pass/fail report.
struct CheckResult {
  std::string name;
  double observed = 0.0;
  double bound = 0.0;
  // "<=", "<", or ">=": relation observed must satisfy against bound.
  std::string relation;
  bool passed = false;
};

CheckResult make_check(std::string name, double observed,
                       std::string relation, double bound);

// Kolmogorov-Smirnov distance between the draws and Laplace(0, scale).
double ks_distance_laplace(std::vector<double> draws, double scale);

// Laplace KS distance, Gamma-radius mean, and tail coverage of the Gamma
// tail bound for alpha in {0.5, 0.1, 0.01}.
std::vector<CheckResult> sampler_checks(std::size_t draws, RngStream& rng);

struct CoverageResult {
  std::size_t replicates = 0;
  std::size_t within = 0;
  double fraction = 0.0;
  double bound = 0.0;
  double max_distance = 0.0;
};

// Fraction of replicates with ||theta_noisy - theta_noiseless||_1 under the
// probability-(1-alpha) accuracy bound, on fresh synthetic data per
// replicate (the default generator, normalized to B = 2).
CoverageResult bound_coverage_alg1(std::size_t n, std::size_t replicates,
                                   double alpha, RngStream& rng);
CoverageResult bound_coverage_alg2(std::size_t n, std::size_t replicates,
                                   double alpha, RngStream& rng);

}  // namespace dpmr

#endif  // DPMR_VERIFICATION_HPP_
