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

#ifndef DPMR_GCD_HPP_
#define DPMR_GCD_HPP_

// Batched greedy coordinate descent with per-iteration Laplace noise.
//
// The data are split into N0 disjoint batches of n0 = floor(n / N0) records;
// iteration t touches batch t only. Every slope coefficient moves by a signed
// step driven by the batch's one-sided directional derivatives at theta(t),
// then receives Laplace(2 eta_t / (epsilon n0)) noise, eta_t = ell / (t + 1).
// The intercept is reset to the batch mean of Y - X beta afterwards.

#include <cstddef>
#include <span>
#include <vector>

#include "dpmr/irls.hpp"
#include "dpmr/model.hpp"
#include "dpmr/objective.hpp"
#include "dpmr/rng.hpp"

namespace dpmr {

struct Alg3Config {
  enum class Init { kRidge, kZero };

  // +infinity disables the noise.
  double epsilon = 0.1;
  double lambda = 0.002;
  double ell = 0.1;
  std::size_t N0 = 40;
  // kRidge starts from the ridge least-squares fit on all of the data, which
  // is not covered by the per-batch noise.
  Init init = Init::kRidge;

  void validate() const;
};

struct BatchPlan {
  std::vector<std::vector<std::size_t>> batches;
  std::size_t batch_size = 0;
  std::size_t dropped = 0;
};

// Uniformly random partition of a random subset of size N0 * floor(n / N0).
BatchPlan split_batches(std::size_t n, std::size_t N0, RngStream& rng);

// Stop when both one-sided derivatives are nonnegative; otherwise move along
// the descending side: -eta d+ if d+ < 0, else +eta d-.
double coordinate_step(const DirectionalDerivatives& dd, double eta);

double gcd_coordinate_step(const Theta& theta, const Dataset& batch,
                           double lambda, std::size_t k, double eta);

// Steps for every coordinate, all evaluated at the same theta.
std::vector<double> coordinate_steps(const Theta& theta, const Dataset& batch,
                                     double lambda, double eta);

struct GcdTrace {
  // iterates[t] is theta(t); iterates[0] is the initialization.
  std::vector<Theta> iterates;
  std::vector<double> etas;
  std::vector<double> noise_scales;
  // Per-iteration draws U_t and pre-noise steps, one entry per coordinate.
  std::vector<std::vector<double>> noise;
  std::vector<std::vector<double>> steps;
  BatchPlan plan;

  const Theta& final_theta() const { return iterates.back(); }
};

GcdTrace fit_alg3(const Dataset& data, const Alg3Config& cfg, RngStream& rng);

// Number of (t, k) with |beta_k(t+1) - beta_k(t)| above
// eta_t (1 + lambda |beta_k(t)|) + |U_t,k|, up to a relative 1e-12.
std::size_t trace_step_violations(const GcdTrace& trace, double lambda);

// Random batches of size n0 and one-record replacements, with a random
// theta and a random iteration t; compares the L1 distance between the two
// step vectors with 2 eta_t / n0. `bound` in the result is the t = 0 value.
SensitivityProbe sensitivity_probe_alg3(std::size_t n0, std::size_t d,
                                        std::size_t trials,
                                        const Alg3Config& cfg, RngStream& rng,
                                        double bound = 2.0);

}  // namespace dpmr

#endif  // DPMR_GCD_HPP_
