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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dpmr/irls.hpp"
#include "dpmr/objective.hpp"
#include "helpers.hpp"

namespace dpmr {
namespace {

using testing::random_data;
using testing::random_theta;

TEST(SplitBatches, EvenSplitUsesEveryRecordOnce) {
  RngStream rng(1, 1);
  const BatchPlan p = split_batches(100, 4, rng);
  ASSERT_EQ(p.batches.size(), 4u);
  EXPECT_EQ(p.batch_size, 25u);
  EXPECT_EQ(p.dropped, 0u);
  std::set<std::size_t> seen;
  for (const auto& b : p.batches) {
    EXPECT_EQ(b.size(), 25u);
    seen.insert(b.begin(), b.end());
  }
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(*seen.rbegin(), 99u);
}

TEST(SplitBatches, RemainderIsDropped) {
  RngStream rng(1, 2);
  const BatchPlan p = split_batches(103, 4, rng);
  EXPECT_EQ(p.batch_size, 25u);
  EXPECT_EQ(p.dropped, 3u);
  std::set<std::size_t> seen;
  for (const auto& b : p.batches) seen.insert(b.begin(), b.end());
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_LT(*seen.rbegin(), 103u);
}

TEST(SplitBatches, IsARandomPartition) {
  RngStream a(1, 3), b(1, 3), c(2, 3);
  const BatchPlan pa = split_batches(60, 3, a);
  EXPECT_EQ(pa.batches, split_batches(60, 3, b).batches);
  EXPECT_NE(pa.batches, split_batches(60, 3, c).batches);
  // Over many draws record 0 lands in each batch about equally often.
  std::vector<int> hits(3, 0);
  RngStream r(5, 5);
  for (int t = 0; t < 3000; ++t) {
    const BatchPlan p = split_batches(30, 3, r);
    for (std::size_t j = 0; j < 3; ++j) {
      if (std::count(p.batches[j].begin(), p.batches[j].end(), 0u)) ++hits[j];
    }
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 120);
}

TEST(SplitBatches, RejectsTooFewRecords) {
  RngStream rng(1, 4);
  EXPECT_THROW(split_batches(3, 4, rng), InvalidArgument);
  EXPECT_THROW(split_batches(10, 0, rng), InvalidArgument);
}

TEST(CoordinateStep, Rules) {
  EXPECT_EQ(coordinate_step({0.3, 0.1}, 0.5), 0.0);
  EXPECT_EQ(coordinate_step({0.0, 0.0}, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(coordinate_step({-0.4, 0.4}, 0.5), 0.2);
  EXPECT_DOUBLE_EQ(coordinate_step({0.4, -0.4}, 0.5), -0.2);
}

TEST(CoordinateStep, FollowsNegativeGradientWhereSmooth) {
  RngStream rng(6, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset data = random_data(40, 3, 100 + trial);
    const Theta t = random_theta(3, rng, 1.5);
    const double lambda = 0.01, eta = 0.3, h = 1e-7;
    for (std::size_t k = 0; k < 3; ++k) {
      Theta up = t, dn = t;
      up.beta[k] += h;
      dn.beta[k] -= h;
      const double g =
          (objective_l1(up, data, lambda) - objective_l1(dn, data, lambda)) / (2.0 * h);
      EXPECT_NEAR(gcd_coordinate_step(t, data, lambda, k, eta), -eta * g, 1e-6);
    }
  }
}

TEST(CoordinateStep, MagnitudeIsBounded) {
  RngStream rng(6, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset data = random_data(25, 4, 200 + trial);
    const Theta t = random_theta(4, rng, 5.0);
    const double lambda = 0.05, eta = 0.7;
    const std::vector<double> s = coordinate_steps(t, data, lambda, eta);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(s[k], gcd_coordinate_step(t, data, lambda, k, eta));
      EXPECT_LE(std::fabs(s[k]), eta * (1.0 + lambda * std::fabs(t.beta[k])) + 1e-15);
    }
  }
}

TEST(CoordinateStep, KinkedStationaryPointDoesNotMove) {
  // beta = 0 with y = 0: every residual is 0, both sides equal (1/n) sum |x|.
  const Dataset data = Dataset::from_rows({{0.5}, {-0.25}}, {0.0, 0.0}, 1.0);
  EXPECT_EQ(gcd_coordinate_step(Theta(0.0, {0.0}), data, 0.0, 0, 1.0), 0.0);
}

TEST(Alg3, ZeroResponseWithoutNoiseStaysAtZero) {
  const Dataset x = random_data(30, 2, 9);
  const Dataset data(30, 2, {x.x_colmajor().begin(), x.x_colmajor().end()},
                     std::vector<double>(30, 0.0), 2.0);
  Alg3Config cfg;
  cfg.N0 = 1;
  cfg.epsilon = std::numeric_limits<double>::infinity();
  cfg.init = Alg3Config::Init::kZero;
  RngStream rng(1, 1);
  const GcdTrace tr = fit_alg3(data, cfg, rng);
  ASSERT_EQ(tr.iterates.size(), 2u);
  EXPECT_EQ(tr.final_theta(), Theta(0.0, {0.0, 0.0}));
}

TEST(Alg3, StepSizesAndNoiseScales) {
  const Dataset data = random_data(400, 3, 10);
  Alg3Config cfg;
  cfg.N0 = 8;
  RngStream rng(2, 2);
  const GcdTrace tr = fit_alg3(data, cfg, rng);
  ASSERT_EQ(tr.etas.size(), 8u);
  ASSERT_EQ(tr.iterates.size(), 9u);
  for (std::size_t t = 0; t < 8; ++t) {
    EXPECT_DOUBLE_EQ(tr.etas[t], cfg.ell / static_cast<double>(t + 1));
    EXPECT_DOUBLE_EQ(tr.noise_scales[t], 2.0 * tr.etas[t] / (cfg.epsilon * 50.0));
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_DOUBLE_EQ(tr.iterates[t + 1].beta[k],
                       tr.iterates[t].beta[k] + tr.steps[t][k] + tr.noise[t][k]);
    }
  }
}

TEST(Alg3, InterceptIsTheBatchMeanResidual) {
  const Dataset data = random_data(120, 2, 11);
  Alg3Config cfg;
  cfg.N0 = 3;
  RngStream rng(2, 3);
  const GcdTrace tr = fit_alg3(data, cfg, rng);
  for (std::size_t t = 0; t < 3; ++t) {
    const Theta& th = tr.iterates[t + 1];
    double mean = 0.0;
    for (std::size_t i : tr.plan.batches[t]) {
      double r = data.y()[i];
      for (std::size_t k = 0; k < 2; ++k) r -= data.x(i, k) * th.beta[k];
      mean += r;
    }
    mean /= static_cast<double>(tr.plan.batches[t].size());
    EXPECT_NEAR(th.mu, mean, 1e-12);
  }
}

TEST(Alg3, RidgeStartMatchesUnitWeightSolve) {
  const Dataset data = random_data(200, 3, 12);
  const Alg3Config cfg;
  RngStream rng(2, 4);
  const GcdTrace tr = fit_alg3(data, cfg, rng);
  const Theta expect =
      weighted_ridge_solve(data, std::vector<double>(200, 1.0), cfg.lambda);
  EXPECT_EQ(tr.iterates[0], expect);
}

TEST(Alg3, TraceRespectsStepBound) {
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = random_data(800, 3, 300 + trial);
    Alg3Config cfg;
    cfg.N0 = 20;
    RngStream rng(3, trial);
    const GcdTrace tr = fit_alg3(data, cfg, rng);
    EXPECT_EQ(trace_step_violations(tr, cfg.lambda), 0u);
  }
}

TEST(Alg3, NoiselessRunsDescendOnTheFullObjective) {
  // Many small steps from zero on a clean problem should make clear progress.
  RngStream gen(4, 4);
  const Dataset x = random_bounded_dataset(4000, 2, 2.0, gen);
  std::vector<double> y(4000);
  for (std::size_t i = 0; i < 4000; ++i) y[i] = 0.3 + 1.2 * x.x(i, 0) - 0.8 * x.x(i, 1);
  const Dataset data(4000, 2, {x.x_colmajor().begin(), x.x_colmajor().end()}, y, 2.0);
  Alg3Config cfg;
  cfg.epsilon = std::numeric_limits<double>::infinity();
  cfg.lambda = 0.0;
  cfg.ell = 1.0;
  cfg.N0 = 100;
  cfg.init = Alg3Config::Init::kZero;
  RngStream rng(4, 5);
  const GcdTrace tr = fit_alg3(data, cfg, rng);
  const double start = objective_l1(tr.iterates.front(), data, 0.0);
  const double end = objective_l1(tr.final_theta(), data, 0.0);
  EXPECT_LT(end, 0.5 * start);
}

TEST(Alg3, ConfigValidation) {
  Alg3Config cfg;
  cfg.N0 = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.ell = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.epsilon = -1.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Alg3Probe, StepDifferencesStayBelowBound) {
  RngStream rng(13, 1);
  const SensitivityProbe p = sensitivity_probe_alg3(50, 3, 500, Alg3Config{}, rng);
  EXPECT_TRUE(p.passed);
  EXPECT_LE(p.max_ratio, 1.0);
  EXPECT_DOUBLE_EQ(p.bound, 2.0 * 0.1 / 50.0);
}

TEST(Alg3Probe, BoundHalvesWhenBatchDoubles) {
  RngStream a(13, 2), b(13, 2);
  const SensitivityProbe small = sensitivity_probe_alg3(50, 3, 10, Alg3Config{}, a);
  const SensitivityProbe large = sensitivity_probe_alg3(100, 3, 10, Alg3Config{}, b);
  EXPECT_DOUBLE_EQ(large.bound, small.bound / 2.0);
}

TEST(Alg3Probe, IdenticalBatchesGiveIdenticalSteps) {
  const Dataset data = random_data(50, 3, 14);
  RngStream rng(13, 3);
  const Theta t = random_theta(3, rng);
  EXPECT_EQ(coordinate_steps(t, data, 0.002, 0.1), coordinate_steps(t, data, 0.002, 0.1));
}

}  // namespace
}  // namespace dpmr
