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

#ifndef DPMR_SMOOTHING_HPP_
#define DPMR_SMOOTHING_HPP_

// Objective-perturbed median regression on the Huber-smoothed loss.
//
// fit_alg1 draws b with density proportional to exp(-epsilon ||b||_1 / 4) and
// minimizes
//
//   L_gamma(mu, beta) + b'omega / n + mu^2 / sqrt(n),   omega = (mu, beta),
//
// jointly over (mu, beta). The baseline solves the same problem with b = 0.

#include <cstddef>
#include <limits>
#include <span>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"
#include "dpmr/sampling.hpp"

namespace dpmr {

struct Alg1Config {
  // +infinity disables the perturbation.
  double epsilon = 0.1;
  double lambda = 0.002;
  double gamma = 0.05;
  // L-infinity norm of the full objective's gradient at termination.
  double solver_tol = 1e-8;
  std::size_t max_iters = 500;

  void validate() const;
};

struct Alg1Report {
  Theta theta;
  NoiseVector b;
  double b_norm = 0.0;
  std::size_t solver_iters = 0;
  double final_grad_norm = 0.0;
  double objective = 0.0;
  double elapsed_seconds = 0.0;
};

// L_gamma(theta) + b'omega / n + mu^2 / sqrt(n). An empty `b` means b = 0.
double perturbed_smoothed_objective(const Theta& theta, const Dataset& data,
                                    const Alg1Config& cfg,
                                    std::span<const double> b);

Theta perturbed_smoothed_gradient(const Theta& theta, const Dataset& data,
                                  const Alg1Config& cfg,
                                  std::span<const double> b);

struct SmoothedSolution {
  Theta theta;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
  double objective = 0.0;
};

// Damped Newton on the piecewise-quadratic objective, started at theta = 0.
// The step solves
//   [(1/(n gamma)) X~' W_gamma X~ + diag(2/sqrt(n), lambda I)] p = -g
// followed by Armijo backtracking; when that system is not safely positive
// definite the Hessian is shifted toward the identity (Levenberg damping),
// which degrades gracefully to gradient descent.
// Throws ConvergenceError carrying the last iterate after max_iters.
SmoothedSolution minimize_perturbed_smoothed(const Dataset& data,
                                             const Alg1Config& cfg,
                                             std::span<const double> b);

Theta fit_baseline_smoothed(const Dataset& data, const Alg1Config& cfg);

Alg1Report fit_alg1(const Dataset& data, const Alg1Config& cfg,
                    RngStream& rng);

// Realized-noise form of the accuracy bound:
//   ||omega_alg1 - omega_baseline||_1 <= ||b||_1 / (n min(lambda, 2/sqrt(n))).
double alg1_distance_bound(double b_norm, std::size_t n, double lambda);

// 4 (d+1) ln((d+1)/alpha) / (n min(lambda, 2/sqrt(n)) epsilon), which holds
// with probability >= 1 - alpha.
double accuracy_bound_alg1(std::size_t d, double alpha, std::size_t n,
                           double lambda, double epsilon);

}  // namespace dpmr

#endif  // DPMR_SMOOTHING_HPP_
