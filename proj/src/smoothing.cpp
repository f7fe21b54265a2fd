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

#include "dpmr/smoothing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <vector>

#include "dpmr/kernels.hpp"
#include "dpmr/objective.hpp"
#include "linalg.hpp"

namespace dpmr {
namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxHalvings = 60;

class SmoothedProblem {
 public:
  SmoothedProblem(const Dataset& data, const Alg1Config& cfg,
                  std::span<const double> b)
      : data_(data),
        cfg_(cfg),
        n_(static_cast<double>(data.n())),
        kappa_(1.0 / std::sqrt(static_cast<double>(data.n()))),
        b_(static_cast<Eigen::Index>(data.d() + 1)),
        r_(data.n()),
        scratch_(data.n()) {
    if (!b.empty() && b.size() != data.d() + 1) {
      throw DimensionMismatch("perturbation vector must have d + 1 entries");
    }
    for (Eigen::Index j = 0; j < b_.size(); ++j) {
      b_(j) = b.empty() ? 0.0 : b[static_cast<std::size_t>(j)];
    }
  }

  double value(const Eigen::VectorXd& omega) {
    fill_residuals(omega);
    return value_from_residuals(omega);
  }

  // Value and gradient; leaves the residuals of `omega` in r_.
  double value_and_gradient(const Eigen::VectorXd& omega,
                            Eigen::VectorXd& grad) {
    const auto& kt = kernels::active();
    fill_residuals(omega);
    const double f = value_from_residuals(omega);
    kt.huber_bracket(r_, cfg_.gamma, scratch_);
    grad.resize(omega.size());
    grad(0) = kt.sum(scratch_) / n_ + b_(0) / n_ + 2.0 * kappa_ * omega(0);
    for (std::size_t k = 0; k < data_.d(); ++k) {
      const auto j = static_cast<Eigen::Index>(k + 1);
      grad(j) = kt.dot(data_.column(k), scratch_) / n_ +
                cfg_.lambda * omega(j) + b_(j) / n_;
    }
    return f;
  }

  // Pseudo-Hessian at the residuals currently held in r_.
  Eigen::MatrixXd hessian() {
    kernels::active().huber_band(r_, cfg_.gamma, scratch_);
    Eigen::MatrixXd h = detail::weighted_gram(data_, scratch_) / (n_ * cfg_.gamma);
    h(0, 0) += 2.0 * kappa_;
    for (Eigen::Index j = 1; j < h.rows(); ++j) h(j, j) += cfg_.lambda;
    return h;
  }

 private:
  void fill_residuals(const Eigen::VectorXd& omega) {
    beta_buf_.assign(omega.data() + 1, omega.data() + omega.size());
    kernels::active().residuals(data_.x_colmajor(), data_.n(), omega(0),
                                beta_buf_, data_.y(), r_);
  }

  double value_from_residuals(const Eigen::VectorXd& omega) const {
    const double loss = kernels::active().huber_sum(r_, cfg_.gamma) / n_;
    const double ridge = 0.5 * cfg_.lambda * omega.tail(omega.size() - 1).squaredNorm();
    return loss + ridge + b_.dot(omega) / n_ + kappa_ * omega(0) * omega(0);
  }

  const Dataset& data_;
  const Alg1Config& cfg_;
  double n_;
  double kappa_;
  Eigen::VectorXd b_;
  std::vector<double> r_;
  std::vector<double> scratch_;
  std::vector<double> beta_buf_;
};

// Newton direction, shifting the Hessian toward the identity until the
// system is safely positive definite and the result is a descent direction.
Eigen::VectorXd descent_direction(const Eigen::MatrixXd& h,
                                  const Eigen::VectorXd& g) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(h.rows(), h.cols());
  const double base = std::max(1.0, h.diagonal().maxCoeff());
  double shift = 0.0;
  for (int attempt = 0; attempt < 40; ++attempt) {
    if (auto p = detail::spd_solve(h + shift * id, -g)) {
      if (g.dot(*p) < 0.0) return *p;
    }
    shift = shift == 0.0 ? 1e-10 * base : shift * 10.0;
  }
  return -g / base;
}

}  // namespace

void Alg1Config::validate() const {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and >= 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be finite and > 0");
  }
  if (!(solver_tol > 0.0)) throw InvalidArgument("solver_tol must be > 0");
  if (max_iters == 0) throw InvalidArgument("max_iters must be >= 1");
}

double perturbed_smoothed_objective(const Theta& theta, const Dataset& data,
                                    const Alg1Config& cfg,
                                    std::span<const double> b) {
  cfg.validate();
  check_dims(theta, data);
  SmoothedProblem problem(data, cfg, b);
  return problem.value(detail::to_vector(theta));
}

Theta perturbed_smoothed_gradient(const Theta& theta, const Dataset& data,
                                  const Alg1Config& cfg,
                                  std::span<const double> b) {
  cfg.validate();
  check_dims(theta, data);
  SmoothedProblem problem(data, cfg, b);
  Eigen::VectorXd g;
  problem.value_and_gradient(detail::to_vector(theta), g);
  return detail::to_theta(g);
}

SmoothedSolution minimize_perturbed_smoothed(const Dataset& data,
                                             const Alg1Config& cfg,
                                             std::span<const double> b) {
  cfg.validate();
  SmoothedProblem problem(data, cfg, b);
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(data.d() + 1));
  Eigen::VectorXd g;
  Eigen::VectorXd g_trial;

  double f = problem.value_and_gradient(omega, g);
  double gnorm = g.lpNorm<Eigen::Infinity>();
  std::size_t iter = 0;
  for (; iter < cfg.max_iters && gnorm > cfg.solver_tol; ++iter) {
    const Eigen::VectorXd p = descent_direction(problem.hessian(), g);
    const double slope = g.dot(p);

    bool accepted = false;
    double step = 1.0;
    for (int h = 0; h < kMaxHalvings; ++h, step *= 0.5) {
      const double ft = problem.value(omega + step * p);
      if (ft <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // Near the optimum the decrease can fall below the rounding of f; take
      // the full step if it still shrinks the gradient.
      step = 1.0;
      problem.value_and_gradient(omega + p, g_trial);
      if (!(g_trial.lpNorm<Eigen::Infinity>() < gnorm)) {
        throw ConvergenceError("smoothed solver stalled: line search failed",
                               detail::to_theta(omega), iter, gnorm);
      }
    }
    omega += step * p;
    f = problem.value_and_gradient(omega, g);
    gnorm = g.lpNorm<Eigen::Infinity>();
  }
  if (gnorm > cfg.solver_tol) {
    throw ConvergenceError("smoothed solver: no convergence in " +
                               std::to_string(cfg.max_iters) + " iterations",
                           detail::to_theta(omega), iter, gnorm);
  }
  return {detail::to_theta(omega), iter, gnorm, f};
}

Theta fit_baseline_smoothed(const Dataset& data, const Alg1Config& cfg) {
  return minimize_perturbed_smoothed(data, cfg, {}).theta;
}

Alg1Report fit_alg1(const Dataset& data, const Alg1Config& cfg,
                    RngStream& rng) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  Alg1Report report;
  if (std::isinf(cfg.epsilon)) {
    report.b.kind = NoiseKind::kL1GammaDirection;
    report.b.values.assign(data.d() + 1, 0.0);
  } else {
    report.b = sample_l1_perturbation(data.d() + 1, cfg.epsilon, rng);
  }
  report.b_norm = report.b.l1_norm();
  SmoothedSolution sol = minimize_perturbed_smoothed(data, cfg, report.b.values);
  report.theta = std::move(sol.theta);
  report.solver_iters = sol.iterations;
  report.final_grad_norm = sol.grad_norm;
  report.objective = sol.objective;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

double alg1_distance_bound(double b_norm, std::size_t n, double lambda) {
  const double curvature =
      std::min(lambda, 2.0 / std::sqrt(static_cast<double>(n)));
  if (!(curvature > 0.0)) return std::numeric_limits<double>::infinity();
  return b_norm / (static_cast<double>(n) * curvature);
}

double accuracy_bound_alg1(std::size_t d, double alpha, std::size_t n,
                           double lambda, double epsilon) {
  if (n == 0) throw InvalidArgument("accuracy_bound_alg1: n must be >= 1");
  if (!(lambda > 0.0)) throw InvalidArgument("accuracy_bound_alg1: lambda must be > 0");
  return alg1_distance_bound(gamma_tail_bound(d, alpha, epsilon), n, lambda);
}

}  // namespace dpmr
