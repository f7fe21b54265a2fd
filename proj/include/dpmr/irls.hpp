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

#ifndef DPMR_IRLS_HPP_
#define DPMR_IRLS_HPP_

// Output-perturbed median regression by iteratively reweighted least squares.
//
// Each pass solves the weighted ridge problem
//   min (1/n) sum w_i r_i^2 + (lambda/2) beta'beta,  w_i = 1 / (|r_i| + e)
// with weights from the previous iterate. The private fit adds i.i.d.
// Laplace(c / epsilon) noise to every coordinate of the final (mu, beta),
// where c is the L1 sensitivity of the noiseless output.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"
#include "dpmr/sampling.hpp"

namespace dpmr {

struct Alg2Config {
  // +infinity disables the output noise.
  double epsilon = 0.1;
  double lambda = 0.002;
  double e = 0.2;
  double tau = 1e-6;
  std::size_t max_iters = 200;
  // A-priori bound beta'beta <= v. Unset means 8 B^2 / (lambda e), which every
  // weighted solve satisfies because (lambda/2) beta'beta <= I(mu, 0) <= B^2/e.
  std::optional<double> v;

  void validate() const;
  double resolved_v(double bound) const;
};

// Unique minimizer of (1/n) sum w_i r_i^2 + (lambda/2) beta'beta. The
// intercept is not penalized. Throws SingularSystem when the normal equations
// are not positive definite (lambda = 0 with a degenerate design).
Theta weighted_ridge_solve(const Dataset& data, std::span<const double> w,
                           double lambda);

struct IrlsTrace {
  // iterates[0] is the unit-weight ridge start; iterates[t] follows the t-th
  // reweighted solve.
  std::vector<Theta> iterates;
  // L1 changes |mu(t) - mu(t-1)| and ||beta(t) - beta(t-1)||_1, t >= 1.
  std::vector<double> mu_change;
  std::vector<double> beta_change;
  bool converged = false;
  std::size_t iterations = 0;

  // Diagnostics against the bounds used by the sensitivity constant, checked
  // on every iterate from t = 1 on.
  double min_weight = 0.0;
  double max_weight = 0.0;
  std::size_t weight_bracket_violations = 0;
  std::size_t beta_norm_violations = 0;
  std::size_t intercept_bound_violations = 0;

  const Theta& final_theta() const { return iterates.back(); }
};

IrlsTrace irls_fit(const Dataset& data, const Alg2Config& cfg);

// c = 8 (sqrt(d v) + B) / (n min(2 / (2 (sqrt(d v) + B) + e), lambda) e).
// Infinite when lambda == 0.
double sensitivity_alg2(const Alg2Config& cfg, std::size_t d, std::size_t n,
                        double bound);

struct Alg2Report {
  Theta theta;
  Theta noiseless;
  NoiseVector noise;
  double sensitivity = 0.0;
  double noise_scale = 0.0;
  IrlsTrace trace;
  double elapsed_seconds = 0.0;
};

Alg2Report fit_alg2(const Dataset& data, const Alg2Config& cfg,
                    RngStream& rng);

// 8 (sqrt(dv)+B) (d+1) ln((d+1)/alpha) /
//   (epsilon min(2/(2(sqrt(dv)+B)+e), lambda) n e)
double accuracy_bound_alg2(std::size_t d, double alpha, std::size_t n,
                           double lambda, double epsilon, double e, double v,
                           double bound);

struct SensitivityProbe {
  std::size_t trials = 0;
  double max_observed = 0.0;
  double bound = 0.0;
  // max over trials of observed / bound for that trial
  double max_ratio = 0.0;
  bool passed = true;
};

// Runs noiseless IRLS on `trials` random bounded datasets of size n and on
// a copy with one record replaced, and reports the largest L1 distance
// between the two outputs against sensitivity_alg2.
SensitivityProbe sensitivity_probe_alg2(std::size_t n, std::size_t d,
                                        std::size_t trials,
                                        const Alg2Config& cfg, RngStream& rng,
                                        double bound = 2.0);

}  // namespace dpmr

#endif  // DPMR_IRLS_HPP_
