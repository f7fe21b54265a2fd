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

#include "dpmr/gcd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpmr/sampling.hpp"
#include "dpmr/verification.hpp"

namespace dpmr {
namespace {

constexpr double kProbeSlack = 1e-12;

double batch_intercept(const Dataset& batch, std::span<const double> beta) {
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.n(); ++i) {
    double fit = 0.0;
    for (std::size_t k = 0; k < batch.d(); ++k) fit += batch.x(i, k) * beta[k];
    sum += batch.y()[i] - fit;
  }
  return sum / static_cast<double>(batch.n());
}

}  // namespace

void Alg3Config::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and >= 0");
  }
  if (!(ell > 0.0) || !std::isfinite(ell)) throw InvalidArgument("ell must be > 0");
  if (N0 == 0) throw InvalidArgument("N0 must be >= 1");
}

BatchPlan split_batches(std::size_t n, std::size_t N0, RngStream& rng) {
  if (N0 == 0) throw InvalidArgument("split_batches: N0 must be >= 1");
  if (n < N0) {
    throw InvalidArgument("split_batches: n = " + std::to_string(n) +
                          " is smaller than N0 = " + std::to_string(N0));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<std::size_t>(rng.below(i + 1))]);
  }
  BatchPlan plan;
  plan.batch_size = n / N0;
  plan.dropped = n - plan.batch_size * N0;
  plan.batches.reserve(N0);
  for (std::size_t b = 0; b < N0; ++b) {
    const auto first = perm.begin() + static_cast<long>(b * plan.batch_size);
    plan.batches.emplace_back(first, first + static_cast<long>(plan.batch_size));
  }
  return plan;
}

double coordinate_step(const DirectionalDerivatives& dd, double eta) {
  if (dd.plus >= 0.0 && dd.minus >= 0.0) return 0.0;
  if (dd.plus < 0.0) return -eta * dd.plus;
  return eta * dd.minus;
}

double gcd_coordinate_step(const Theta& theta, const Dataset& batch,
                           double lambda, std::size_t k, double eta) {
  return coordinate_step(directional_derivatives(theta, batch, lambda, k), eta);
}

std::vector<double> coordinate_steps(const Theta& theta, const Dataset& batch,
                                     double lambda, double eta) {
  const Residuals res = residuals(theta, batch);
  std::vector<double> steps(batch.d());
  for (std::size_t k = 0; k < batch.d(); ++k) {
    steps[k] = coordinate_step(directional_derivatives(res, theta, batch, lambda, k), eta);
  }
  return steps;
}

GcdTrace fit_alg3(const Dataset& data, const Alg3Config& cfg, RngStream& rng) {
  cfg.validate();
  GcdTrace trace;
  trace.plan = split_batches(data.n(), cfg.N0, rng);
  const std::size_t d = data.d();
  const double n0 = static_cast<double>(trace.plan.batch_size);

  if (cfg.init == Alg3Config::Init::kRidge) {
    const std::vector<double> ones(data.n(), 1.0);
    trace.iterates.push_back(weighted_ridge_solve(data, ones, cfg.lambda));
  } else {
    trace.iterates.emplace_back(d);
  }

  for (std::size_t t = 0; t < cfg.N0; ++t) {
    const Dataset batch = data.subset(trace.plan.batches[t]);
    const double eta = cfg.ell / static_cast<double>(t + 1);
    const double scale = 2.0 * eta / (cfg.epsilon * n0);
    Theta next = trace.iterates.back();
    std::vector<double> steps = coordinate_steps(next, batch, cfg.lambda, eta);
    std::vector<double> noise = scale > 0.0 ? sample_laplace(scale, d, rng).values
                                            : std::vector<double>(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) next.beta[k] += steps[k] + noise[k];
    next.mu = batch_intercept(batch, next.beta);

    trace.etas.push_back(eta);
    trace.noise_scales.push_back(scale);
    trace.steps.push_back(std::move(steps));
    trace.noise.push_back(std::move(noise));
    trace.iterates.push_back(std::move(next));
  }
  return trace;
}

std::size_t trace_step_violations(const GcdTrace& trace, double lambda) {
  std::size_t bad = 0;
  for (std::size_t t = 0; t < trace.etas.size(); ++t) {
    const Theta& before = trace.iterates[t];
    const Theta& after = trace.iterates[t + 1];
    for (std::size_t k = 0; k < before.d(); ++k) {
      const double limit = trace.etas[t] * (1.0 + lambda * std::fabs(before.beta[k])) +
                           std::fabs(trace.noise[t][k]);
      if (std::fabs(after.beta[k] - before.beta[k]) > limit * (1.0 + 1e-12)) ++bad;
    }
  }
  return bad;
}

SensitivityProbe sensitivity_probe_alg3(std::size_t n0, std::size_t d,
                                        std::size_t trials,
                                        const Alg3Config& cfg, RngStream& rng,
                                        double bound) {
  cfg.validate();
  if (trials == 0) throw InvalidArgument("probe needs trials >= 1");
  SensitivityProbe out;
  out.trials = trials;
  out.bound = 2.0 * cfg.ell / static_cast<double>(n0);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const NeighborPair pair = random_neighbor_pair(n0, d, bound, rng);
    const auto t = static_cast<std::size_t>(rng.below(cfg.N0));
    const double eta = cfg.ell / static_cast<double>(t + 1);
    Theta theta(d);
    theta.mu = bound * (2.0 * rng.uniform_open01() - 1.0);
    for (double& b : theta.beta) b = 8.0 * (rng.uniform_open01() - 0.5);

    const auto a = coordinate_steps(theta, pair.first(), cfg.lambda, eta);
    const auto b = coordinate_steps(theta, pair.second(), cfg.lambda, eta);
    double diff = 0.0;
    for (std::size_t k = 0; k < d; ++k) diff += std::fabs(a[k] - b[k]);
    const double limit = 2.0 * eta / static_cast<double>(n0);
    out.max_observed = std::max(out.max_observed, diff);
    out.max_ratio = std::max(out.max_ratio, diff / limit);
    if (diff > limit + kProbeSlack) out.passed = false;
  }
  return out;
}

}  // namespace dpmr
