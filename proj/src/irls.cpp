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

#include "dpmr/irls.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "dpmr/kernels.hpp"
#include "dpmr/objective.hpp"
#include "dpmr/verification.hpp"
#include "linalg.hpp"

namespace dpmr {
namespace {

// sqrt(d v) + B: the bound on |mu| at a weighted solve.
double intercept_bound(std::size_t d, double v, double bound) {
  return std::sqrt(static_cast<double>(d) * v) + bound;
}

}  // namespace

void Alg2Config::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and >= 0");
  }
  if (!(e > 0.0) || !std::isfinite(e)) throw InvalidArgument("e must be > 0");
  if (!(tau > 0.0)) throw InvalidArgument("tau must be > 0");
  if (max_iters == 0) throw InvalidArgument("N0 must be >= 1");
  if (v && !(*v > 0.0)) throw InvalidArgument("v must be > 0");
}

double Alg2Config::resolved_v(double bound) const {
  if (v) return *v;
  if (!(lambda > 0.0)) return std::numeric_limits<double>::infinity();
  return 8.0 * bound * bound / (lambda * e);
}

Theta weighted_ridge_solve(const Dataset& data, std::span<const double> w,
                           double lambda) {
  if (w.size() != data.n()) throw DimensionMismatch("weights length differs from n");
  for (double wi : w) {
    if (!(wi > 0.0) || !std::isfinite(wi)) {
      throw InvalidArgument("weighted_ridge_solve: weights must be positive");
    }
  }
  if (!(lambda >= 0.0)) throw InvalidArgument("lambda must be >= 0");
  const double n = static_cast<double>(data.n());
  Eigen::MatrixXd a = detail::weighted_gram(data, w) / n;
  for (Eigen::Index j = 1; j < a.rows(); ++j) a(j, j) += 0.5 * lambda;
  const Eigen::VectorXd rhs = detail::weighted_moment(data, w) / n;
  auto omega = detail::spd_solve(a, rhs);
  if (!omega) {
    throw SingularSystem(
        "weighted normal equations are singular (lambda = 0 with a "
        "rank-deficient design?)");
  }
  return detail::to_theta(*omega);
}

IrlsTrace irls_fit(const Dataset& data, const Alg2Config& cfg) {
  cfg.validate();
  const auto& kt = kernels::active();
  const double v = cfg.resolved_v(data.bound());
  const double mu_bound = intercept_bound(data.d(), v, data.bound());
  const double w_lo = 1.0 / (2.0 * mu_bound + cfg.e);
  const double w_hi = 1.0 / cfg.e;
  constexpr double kSlack = 1e-12;

  IrlsTrace trace;
  trace.min_weight = std::numeric_limits<double>::infinity();
  trace.max_weight = 0.0;
  std::vector<double> w(data.n(), 1.0);
  trace.iterates.push_back(weighted_ridge_solve(data, w, cfg.lambda));

  auto check_iterate = [&](const Theta& t) {
    if (beta_sq_norm(t) > v * (1.0 + kSlack)) ++trace.beta_norm_violations;
    if (std::fabs(t.mu) > mu_bound * (1.0 + kSlack)) ++trace.intercept_bound_violations;
  };
  check_iterate(trace.iterates.back());

  std::vector<double> r(data.n());
  for (std::size_t t = 1; t <= cfg.max_iters; ++t) {
    const Theta& prev = trace.iterates.back();
    kt.residuals(data.x_colmajor(), data.n(), prev.mu, prev.beta, data.y(), r);
    kt.irls_weights(r, cfg.e, w);
    if (t >= 2) {
      const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
      trace.min_weight = std::min(trace.min_weight, *lo);
      trace.max_weight = std::max(trace.max_weight, *hi);
      if (*lo < w_lo * (1.0 - kSlack) || *hi > w_hi * (1.0 + kSlack)) {
        ++trace.weight_bracket_violations;
      }
    }
    Theta next = weighted_ridge_solve(data, w, cfg.lambda);
    check_iterate(next);
    const double dmu = std::fabs(next.mu - prev.mu);
    double dbeta = 0.0;
    for (std::size_t k = 0; k < data.d(); ++k) {
      dbeta += std::fabs(next.beta[k] - prev.beta[k]);
    }
    trace.mu_change.push_back(dmu);
    trace.beta_change.push_back(dbeta);
    trace.iterates.push_back(std::move(next));
    trace.iterations = t;
    if (dmu <= cfg.tau && dbeta <= cfg.tau) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

double sensitivity_alg2(const Alg2Config& cfg, std::size_t d, std::size_t n,
                        double bound) {
  cfg.validate();
  if (n == 0) throw InvalidArgument("sensitivity_alg2: n must be >= 1");
  const double v = cfg.resolved_v(bound);
  const double m = intercept_bound(d, v, bound);
  const double curvature = std::min(2.0 / (2.0 * m + cfg.e), cfg.lambda);
  if (!(curvature > 0.0)) return std::numeric_limits<double>::infinity();
  return 8.0 * m / (static_cast<double>(n) * curvature * cfg.e);
}

Alg2Report fit_alg2(const Dataset& data, const Alg2Config& cfg,
                    RngStream& rng) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Alg2Report report;
  report.trace = irls_fit(data, cfg);
  report.noiseless = report.trace.final_theta();
  report.sensitivity = sensitivity_alg2(cfg, data.d(), data.n(), data.bound());
  report.noise_scale = report.sensitivity / cfg.epsilon;
  report.theta = report.noiseless;
  if (report.noise_scale > 0.0) {
    report.noise = sample_laplace(report.noise_scale, data.d() + 1, rng);
    report.theta.mu += report.noise.values[0];
    for (std::size_t k = 0; k < data.d(); ++k) {
      report.theta.beta[k] += report.noise.values[k + 1];
    }
  } else {
    report.noise.values.assign(data.d() + 1, 0.0);
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

double accuracy_bound_alg2(std::size_t d, double alpha, std::size_t n,
                           double lambda, double epsilon, double e, double v,
                           double bound) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("accuracy_bound_alg2: alpha must lie in (0, 1)");
  }
  if (n == 0 || !(lambda > 0.0) || !(epsilon > 0.0) || !(e > 0.0) ||
      !(v > 0.0) || !(bound > 0.0)) {
    throw InvalidArgument("accuracy_bound_alg2: parameters must be positive");
  }
  const double m = intercept_bound(d, v, bound);
  const double dim = static_cast<double>(d + 1);
  const double curvature = std::min(2.0 / (2.0 * m + e), lambda);
  return 8.0 * m * dim * std::log(dim / alpha) /
         (epsilon * curvature * static_cast<double>(n) * e);
}

SensitivityProbe sensitivity_probe_alg2(std::size_t n, std::size_t d,
                                        std::size_t trials,
                                        const Alg2Config& cfg, RngStream& rng,
                                        double bound) {
  if (trials == 0) throw InvalidArgument("probe needs trials >= 1");
  SensitivityProbe out;
  out.trials = trials;
  out.bound = sensitivity_alg2(cfg, d, n, bound);
  for (std::size_t t = 0; t < trials; ++t) {
    const NeighborPair pair = random_neighbor_pair(n, d, bound, rng);
    const Theta a = irls_fit(pair.first(), cfg).final_theta();
    const Theta b = irls_fit(pair.second(), cfg).final_theta();
    const double diff = l1_distance(a, b);
    out.max_observed = std::max(out.max_observed, diff);
    out.max_ratio = std::max(out.max_ratio, diff / out.bound);
    if (diff > out.bound) out.passed = false;
  }
  return out;
}

}  // namespace dpmr
