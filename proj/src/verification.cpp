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

#include "dpmr/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dpmr/datagen.hpp"
#include "dpmr/irls.hpp"
#include "dpmr/sampling.hpp"
#include "dpmr/smoothing.hpp"

namespace dpmr {
namespace {

// Rows copied out once so the grid loop touches contiguous memory.
struct RowCache {
  std::size_t d;
  std::vector<double> x;  // row-major
  std::vector<double> y;
};

RowCache cache_rows(const Dataset& data) {
  RowCache c{data.d(), std::vector<double>(data.n() * data.d()),
             std::vector<double>(data.y().begin(), data.y().end())};
  for (std::size_t i = 0; i < data.n(); ++i) {
    for (std::size_t k = 0; k < data.d(); ++k) {
      c.x[i * data.d() + k] = data.x(i, k);
    }
  }
  return c;
}

double grid_objective(const RowCache& c, const double* omega, double lambda,
                      double kappa) {
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < c.y.size(); ++i) {
    double r = omega[0] - c.y[i];
    for (std::size_t k = 0; k < c.d; ++k) r += c.x[i * c.d + k] * omega[k + 1];
    abs_sum += std::fabs(r);
  }
  double ridge = 0.0;
  for (std::size_t k = 0; k < c.d; ++k) ridge += omega[k + 1] * omega[k + 1];
  return abs_sum / static_cast<double>(c.y.size()) + 0.5 * lambda * ridge +
         kappa * omega[0] * omega[0];
}

bool satisfies(double observed, const std::string& relation, double bound) {
  if (relation == "<=") return observed <= bound;
  if (relation == "<") return observed < bound;
  if (relation == ">=") return observed >= bound;
  throw InvalidArgument("unknown relation '" + relation + "'");
}

Dataset synthetic_normalized(std::size_t n, RngStream& rng) {
  GeneratorSpec spec;
  spec.n = n;
  return normalize(generate(spec, rng).table).data;
}

}  // namespace

NeighborPair::NeighborPair(std::shared_ptr<const Dataset> first,
                           std::shared_ptr<const Dataset> second,
                           std::size_t index)
    : first_(std::move(first)), second_(std::move(second)), index_(index) {
  if (!first_ || !second_) throw InvalidArgument("NeighborPair: null dataset");
  if (first_->n() != second_->n() || first_->d() != second_->d() ||
      first_->bound() != second_->bound()) {
    throw DimensionMismatch("NeighborPair: datasets differ in n, d or B");
  }
  if (index_ >= first_->n()) throw InvalidArgument("NeighborPair: index out of range");
}

NeighborPair make_neighbor_pair(std::shared_ptr<const Dataset> base,
                                std::size_t index,
                                std::span<const double> x_row, double y) {
  if (!base) throw InvalidArgument("make_neighbor_pair: null dataset");
  if (index >= base->n()) throw InvalidArgument("make_neighbor_pair: index out of range");
  if (x_row.size() != base->d()) {
    throw DimensionMismatch("make_neighbor_pair: replacement has wrong length");
  }
  const std::vector<double> old = base->row(index);
  if (std::equal(old.begin(), old.end(), x_row.begin()) &&
      base->y()[index] == y) {
    throw InvalidArgument(
        "make_neighbor_pair: replacement equals the original record");
  }
  auto second = std::make_shared<const Dataset>(base->with_record(index, x_row, y));
  return {std::move(base), std::move(second), index};
}

NeighborPair make_neighbor_pair(std::shared_ptr<const Dataset> base,
                                RngStream& rng) {
  if (!base) throw InvalidArgument("make_neighbor_pair: null dataset");
  const auto index = static_cast<std::size_t>(rng.below(base->n()));
  auto [x, y] = random_bounded_record(base->d(), base->bound(), rng);
  return make_neighbor_pair(std::move(base), index, x, y);
}

std::pair<std::vector<double>, double> random_bounded_record(std::size_t d,
                                                             double bound,
                                                             RngStream& rng) {
  if (d == 0 || !(bound > 0.0)) {
    throw InvalidArgument("random_bounded_record: need d >= 1 and B > 0");
  }
  std::vector<double> x(d);
  double norm = 0.0;
  for (double& v : x) {
    v = draw_laplace(1.0, rng);
    norm += std::fabs(v);
  }
  // Divide first, then scale, so the row norm cannot round above 1.
  const double radius = rng.uniform_open01();
  for (double& v : x) v = v / norm * radius;
  const double y = bound * (2.0 * rng.uniform_open01() - 1.0);
  return {std::move(x), y};
}

Dataset random_bounded_dataset(std::size_t n, std::size_t d, double bound,
                               RngStream& rng) {
  if (n == 0) throw InvalidArgument("random_bounded_dataset: n must be >= 1");
  std::vector<double> x(n * d);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [row, yi] = random_bounded_record(d, bound, rng);
    for (std::size_t k = 0; k < d; ++k) x[k * n + i] = row[k];
    y[i] = yi;
  }
  return Dataset(n, d, std::move(x), std::move(y), bound);
}

NeighborPair random_neighbor_pair(std::size_t n, std::size_t d, double bound,
                                  RngStream& rng) {
  auto base = std::make_shared<const Dataset>(random_bounded_dataset(n, d, bound, rng));
  return make_neighbor_pair(std::move(base), rng);
}

double oracle_objective(const Theta& theta, const Dataset& data, double lambda,
                        double intercept_penalty) {
  check_dims(theta, data);
  const RowCache c = cache_rows(data);
  const std::vector<double> omega = theta.stacked();
  return grid_objective(c, omega.data(), lambda, intercept_penalty);
}

Theta oracle_l1_fit(const Dataset& data, double lambda, const GridSpec& grid) {
  if (data.d() > 2 || data.n() > 50) {
    throw InvalidArgument("oracle_l1_fit: only d <= 2 and n <= 50 are supported");
  }
  if (grid.points_per_dim < 5 || grid.points_per_dim % 2 == 0) {
    throw InvalidArgument("oracle_l1_fit: points_per_dim must be odd and >= 5");
  }
  if (!(grid.final_resolution > 0.0) || !(lambda >= 0.0) ||
      !(grid.intercept_penalty >= 0.0) || !(grid.initial_half_width >= 0.0)) {
    throw InvalidArgument("oracle_l1_fit: invalid grid or lambda");
  }
  const RowCache c = cache_rows(data);
  const std::size_t dims = data.d() + 1;
  const std::size_t m = grid.points_per_dim;
  const double steps = static_cast<double>(m - 1);

  std::array<double, 3> center{0.0, 0.0, 0.0};
  double half = grid.initial_half_width > 0.0 ? grid.initial_half_width
                                              : 16.0 * data.bound();
  for (;;) {
    double spacing = 2.0 * half / steps;
    const bool last = spacing <= grid.final_resolution;
    if (last) spacing = grid.final_resolution;

    // Scan the box; recenter on the argmin until it lies strictly inside.
    std::array<std::size_t, 3> best_idx{};
    std::array<double, 3> best_pt = center;
    for (int moves = 0; moves < 1000; ++moves) {
      double best = std::numeric_limits<double>::infinity();
      std::array<std::size_t, 3> idx{};
      std::array<double, 3> pt{};
      std::size_t total = 1;
      for (std::size_t j = 0; j < dims; ++j) total *= m;
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t j = 0; j < dims; ++j) {
          idx[j] = rest % m;
          rest /= m;
          pt[j] = center[j] + (static_cast<double>(idx[j]) - steps / 2.0) * spacing;
        }
        const double f = grid_objective(c, pt.data(), lambda, grid.intercept_penalty);
        if (f < best) {
          best = f;
          best_idx = idx;
          best_pt = pt;
        }
      }
      bool interior = true;
      for (std::size_t j = 0; j < dims; ++j) {
        interior = interior && best_idx[j] != 0 && best_idx[j] != m - 1;
      }
      center = best_pt;
      if (interior) break;
    }
    if (last) break;
    half = 4.0 * spacing;
  }
  return Theta(center[0], std::vector<double>(center.begin() + 1,
                                              center.begin() + static_cast<long>(dims)));
}

CheckResult make_check(std::string name, double observed,
                       std::string relation, double bound) {
  const bool ok = satisfies(observed, relation, bound);
  return {std::move(name), observed, bound, std::move(relation), ok};
}

double ks_distance_laplace(std::vector<double> draws, double scale) {
  if (draws.empty()) throw InvalidArgument("ks_distance_laplace: no draws");
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = laplace_cdf(draws[i], scale);
    dist = std::max({dist, f - static_cast<double>(i) / n,
                     static_cast<double>(i + 1) / n - f});
  }
  return dist;
}

std::vector<CheckResult> sampler_checks(std::size_t draws, RngStream& rng) {
  if (draws == 0) throw InvalidArgument("sampler_checks: draws must be >= 1");
  std::vector<CheckResult> out;

  RngStream lap_rng = rng.substream(1);
  std::vector<double> lap(draws);
  for (double& v : lap) v = draw_laplace(1.0, lap_rng);
  out.push_back(make_check("laplace_ks_distance", ks_distance_laplace(std::move(lap), 1.0),
                           "<", 0.01));

  constexpr std::size_t kD = 3;
  constexpr double kEpsilon = 0.1;
  RngStream gamma_rng = rng.substream(2);
  std::vector<double> norms(draws);
  double sum = 0.0;
  for (double& v : norms) {
    v = sample_l1_perturbation(kD + 1, kEpsilon, gamma_rng).l1_norm();
    sum += v;
  }
  const double expected = static_cast<double>(kD + 1) * 4.0 / kEpsilon;
  out.push_back(make_check("gamma_radius_mean_rel_error",
                           std::fabs(sum / static_cast<double>(draws) - expected) / expected,
                           "<=", 0.02));
  for (double alpha : {0.5, 0.1, 0.01}) {
    const double t = gamma_tail_bound(kD, alpha, kEpsilon);
    const auto inside = std::count_if(norms.begin(), norms.end(),
                                      [t](double v) { return v <= t; });
    char name[48];
    std::snprintf(name, sizeof name, "gamma_tail_coverage_alpha_%g", alpha);
    out.push_back(make_check(name, static_cast<double>(inside) / static_cast<double>(draws),
                             ">=", 1.0 - alpha));
  }
  return out;
}

CoverageResult bound_coverage_alg1(std::size_t n, std::size_t replicates,
                                   double alpha, RngStream& rng) {
  if (replicates == 0) throw InvalidArgument("coverage needs replicates >= 1");
  const Alg1Config cfg;
  CoverageResult out;
  out.replicates = replicates;
  out.bound = accuracy_bound_alg1(3, alpha, n, cfg.lambda, cfg.epsilon);
  for (std::size_t r = 0; r < replicates; ++r) {
    RngStream data_rng = rng.substream(2 * r);
    RngStream fit_rng = rng.substream(2 * r + 1);
    const Dataset data = synthetic_normalized(n, data_rng);
    const Theta clean = fit_baseline_smoothed(data, cfg);
    const Theta noisy = fit_alg1(data, cfg, fit_rng).theta;
    const double dist = l1_distance(clean, noisy);
    out.max_distance = std::max(out.max_distance, dist);
    if (dist <= out.bound) ++out.within;
  }
  out.fraction = static_cast<double>(out.within) / static_cast<double>(replicates);
  return out;
}

CoverageResult bound_coverage_alg2(std::size_t n, std::size_t replicates,
                                   double alpha, RngStream& rng) {
  if (replicates == 0) throw InvalidArgument("coverage needs replicates >= 1");
  const Alg2Config cfg;
  CoverageResult out;
  out.replicates = replicates;
  for (std::size_t r = 0; r < replicates; ++r) {
    RngStream data_rng = rng.substream(2 * r);
    RngStream fit_rng = rng.substream(2 * r + 1);
    const Dataset data = synthetic_normalized(n, data_rng);
    out.bound = accuracy_bound_alg2(data.d(), alpha, n, cfg.lambda, cfg.epsilon,
                                    cfg.e, cfg.resolved_v(data.bound()), data.bound());
    const Alg2Report rep = fit_alg2(data, cfg, fit_rng);
    const double dist = l1_distance(rep.noiseless, rep.theta);
    out.max_distance = std::max(out.max_distance, dist);
    if (dist <= out.bound) ++out.within;
  }
  out.fraction = static_cast<double>(out.within) / static_cast<double>(replicates);
  return out;
}

}  // namespace dpmr
