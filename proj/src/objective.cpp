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

#include "dpmr/objective.hpp"

#include <cmath>
#include <string>

#include "dpmr/kernels.hpp"

namespace dpmr {
namespace {

double ridge_term(const Theta& theta, double lambda) {
  return 0.5 * lambda * beta_sq_norm(theta);
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be finite and > 0");
  }
}

}  // namespace

Residuals residuals(const Theta& theta, const Dataset& data) {
  check_dims(theta, data);
  Residuals out{std::vector<double>(data.n())};
  kernels::active().residuals(data.x_colmajor(), data.n(), theta.mu, theta.beta,
                              data.y(), out.r);
  return out;
}

double objective_l1(const Theta& theta, const Dataset& data, double lambda) {
  const Residuals res = residuals(theta, data);
  return kernels::active().abs_sum(res.r) / static_cast<double>(data.n()) +
         ridge_term(theta, lambda);
}

double huber_rho(double t, double gamma) {
  check_gamma(gamma);
  const double a = std::fabs(t);
  return a <= gamma ? t * t / (2.0 * gamma) : a - 0.5 * gamma;
}

std::vector<std::int8_t> sign_vector(const Residuals& res, double gamma) {
  check_gamma(gamma);
  std::vector<std::int8_t> s(res.r.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = res.r[i];
    s[i] = r < -gamma ? -1 : (r > gamma ? 1 : 0);
  }
  return s;
}

std::vector<double> huber_bracket(const Residuals& res, double gamma) {
  check_gamma(gamma);
  std::vector<double> out(res.r.size());
  kernels::active().huber_bracket(res.r, gamma, out);
  return out;
}

double smoothed_objective(const Theta& theta, const Dataset& data,
                          const ObjectiveConfig& cfg) {
  cfg.validate();
  const Residuals res = residuals(theta, data);
  return kernels::active().huber_sum(res.r, cfg.gamma) /
             static_cast<double>(data.n()) +
         ridge_term(theta, cfg.lambda);
}

Theta smoothed_gradient(const Theta& theta, const Dataset& data,
                        const ObjectiveConfig& cfg) {
  cfg.validate();
  const auto& kt = kernels::active();
  const Residuals res = residuals(theta, data);
  std::vector<double> bracket(data.n());
  kt.huber_bracket(res.r, cfg.gamma, bracket);
  const double inv_n = 1.0 / static_cast<double>(data.n());
  Theta grad(data.d());
  grad.mu = kt.sum(bracket) * inv_n;
  for (std::size_t k = 0; k < data.d(); ++k) {
    grad.beta[k] =
        kt.dot(data.column(k), bracket) * inv_n + cfg.lambda * theta.beta[k];
  }
  return grad;
}

DirectionalDerivatives directional_derivatives(const Residuals& res,
                                               const Theta& theta,
                                               const Dataset& data,
                                               double lambda, std::size_t k) {
  check_dims(theta, data);
  if (k >= data.d()) {
    throw InvalidArgument("coordinate index " + std::to_string(k) +
                          " out of range for d = " + std::to_string(data.d()));
  }
  if (res.r.size() != data.n()) {
    throw DimensionMismatch("residual vector length differs from n");
  }
  const kernels::SignKinkSums s =
      kernels::active().sign_kink_sums(res.r, data.column(k));
  const double inv_n = 1.0 / static_cast<double>(data.n());
  const double ridge = lambda * theta.beta[k];
  return {(s.signed_sum + s.kink_sum) * inv_n + ridge,
          (-s.signed_sum + s.kink_sum) * inv_n - ridge};
}

DirectionalDerivatives directional_derivatives(const Theta& theta,
                                               const Dataset& data,
                                               double lambda, std::size_t k) {
  return directional_derivatives(residuals(theta, data), theta, data, lambda,
                                 k);
}

double perturbed_objective_le(const Theta& theta, const Dataset& data,
                              double lambda, double e, bool normalized) {
  if (!(e > 0.0)) throw InvalidArgument("e must be > 0");
  const Residuals res = residuals(theta, data);
  // log has no SIMD kernel; a compensated loop keeps large-n sums accurate.
  double sum = 0.0;
  double comp = 0.0;
  for (double r : res.r) {
    const double a = std::fabs(r);
    const double term = a - 0.5 * e * std::log(e + a);
    const double t = sum + term;
    comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term
                                              : (term - t) + sum;
    sum = t;
  }
  sum += comp;
  if (normalized) sum /= static_cast<double>(data.n());
  return sum + ridge_term(theta, lambda);
}

}  // namespace dpmr
