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

#ifndef DPMR_OBJECTIVE_HPP_
#define DPMR_OBJECTIVE_HPP_

// Deterministic objective and derivative evaluations for ridge-penalized
// median regression. All functions are pure.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpmr/model.hpp"

namespace dpmr {

// r_i = mu + X_i . beta - Y_i
Residuals residuals(const Theta& theta, const Dataset& data);

// (1/n) sum |r_i| + (lambda/2) beta'beta
double objective_l1(const Theta& theta, const Dataset& data, double lambda);

// Huber surrogate of |t|: t^2/(2 gamma) inside [-gamma, gamma], |t| - gamma/2
// outside.
double huber_rho(double t, double gamma);

// -1 / 0 / +1 for r_i < -gamma, |r_i| <= gamma, r_i > gamma.
std::vector<std::int8_t> sign_vector(const Residuals& res, double gamma);

// (1/gamma) W r + s, entrywise clamp(r_i / gamma, -1, 1).
std::vector<double> huber_bracket(const Residuals& res, double gamma);

// (1/n) sum rho_gamma(r_i) + (lambda/2) beta'beta
double smoothed_objective(const Theta& theta, const Dataset& data,
                          const ObjectiveConfig& cfg);

// Gradient of smoothed_objective, returned in Theta shape:
//   d/dmu   = (1/n) 1' [(1/gamma) W r + s]
//   d/dbeta = (1/n) X' [(1/gamma) W r + s] + lambda beta
Theta smoothed_gradient(const Theta& theta, const Dataset& data,
                        const ObjectiveConfig& cfg);

// One-sided derivatives of objective_l1 along +e_k and along -e_k, i.e.
//   plus  = lim_{t->0+} (L(beta + t e_k) - L(beta)) / t
//   minus = lim_{t->0+} (L(beta - t e_k) - L(beta)) / t
// so plus + minus >= 0 always and plus == -minus wherever L is smooth in
// beta_k. The ridge term contributes +lambda beta_k and -lambda beta_k.
struct DirectionalDerivatives {
  double plus = 0.0;
  double minus = 0.0;
};

// Coordinate k is 0-based. Records with r_i == 0 contribute |x_ik| to both
// sides.
DirectionalDerivatives directional_derivatives(const Theta& theta,
                                               const Dataset& data,
                                               double lambda, std::size_t k);

// Same, from precomputed residuals of `data` at `theta`.
DirectionalDerivatives directional_derivatives(const Residuals& res,
                                               const Theta& theta,
                                               const Dataset& data,
                                               double lambda, std::size_t k);

// sum_i [|r_i| - (e/2) ln(e + |r_i|)] + (lambda/2) beta'beta.
//
// The sum is un-normalized as in the published definition; pass
// `normalized = true` for (1/n) sum instead. The penalty is not rescaled.
double perturbed_objective_le(const Theta& theta, const Dataset& data,
                              double lambda, double e,
                              bool normalized = false);

}  // namespace dpmr

#endif  // DPMR_OBJECTIVE_HPP_
