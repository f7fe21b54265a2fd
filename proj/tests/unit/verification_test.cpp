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

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "dpmr/objective.hpp"
#include "dpmr/smoothing.hpp"
#include "helpers.hpp"

namespace dpmr {
namespace {

using testing::random_data;

TEST(Oracle, InterceptOnlyMedian) {
  const Dataset data = Dataset::from_rows({{0.0}, {0.0}, {0.0}}, {1.0, 2.0, 9.0}, 9.0);
  const Theta t = oracle_l1_fit(data, 0.01);
  EXPECT_NEAR(t.mu, 2.0, 1e-4);
}

TEST(Oracle, RecoversExactLine) {
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < 9; ++i) {
    const double x = -0.8 + 0.2 * i;
    rows.push_back({x});
    y.push_back(0.4 - 1.1 * x);
  }
  const Dataset data = Dataset::from_rows(rows, y, 2.0);
  const Theta t = oracle_l1_fit(data, 0.0);
  EXPECT_NEAR(t.mu, 0.4, 2e-4);
  EXPECT_NEAR(t.beta[0], -1.1, 2e-4);
}

TEST(Oracle, NoGridPointOfAFineSweepBeatsIt) {
  for (int trial = 0; trial < 5; ++trial) {
    const Dataset data = random_data(7, 1, 400 + trial);
    const Theta best = oracle_l1_fit(data, 0.01);
    const double f = oracle_objective(best, data, 0.01, 0.0);
    for (double mu = -4.0; mu <= 4.0; mu += 0.01) {
      for (double b = -8.0; b <= 8.0; b += 0.02) {
        ASSERT_GE(oracle_objective(Theta(mu, {b}), data, 0.01, 0.0), f - 5e-4);
      }
    }
  }
}

TEST(Oracle, ObjectiveMatchesLibraryObjective) {
  RngStream rng(1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset data = random_data(15, 2, 500 + trial);
    const Theta t = testing::random_theta(2, rng);
    EXPECT_NEAR(oracle_objective(t, data, 0.3, 0.0), objective_l1(t, data, 0.3), 1e-13);
    EXPECT_NEAR(oracle_objective(t, data, 0.3, 0.5),
                objective_l1(t, data, 0.3) + 0.5 * t.mu * t.mu, 1e-13);
  }
}

TEST(Oracle, SmoothedBaselineIsWithinHalfGammaOfIt) {
  for (int trial = 0; trial < 10; ++trial) {
    const Dataset data = random_data(12, 2, 600 + trial);
    const double kappa = 1.0 / std::sqrt(12.0);
    GridSpec grid;
    grid.intercept_penalty = kappa;
    const Theta o = oracle_l1_fit(data, 0.0, grid);
    Alg1Config cfg;
    cfg.gamma = 1e-4;
    cfg.lambda = 0.0;
    const Theta s = fit_baseline_smoothed(data, cfg);
    const double fo = oracle_objective(o, data, 0.0, kappa);
    const double fs = oracle_objective(s, data, 0.0, kappa);
    EXPECT_LE(fo, fs + 2.0 * grid.final_resolution);
    EXPECT_LE(fs, fo + cfg.gamma / 2.0 + 2.0 * grid.final_resolution);
  }
}

TEST(Oracle, RejectsLargeProblems) {
  EXPECT_THROW(oracle_l1_fit(random_data(10, 3, 1), 0.0), InvalidArgument);
  EXPECT_THROW(oracle_l1_fit(random_data(51, 1, 1), 0.0), InvalidArgument);
}

TEST(NeighborPair, DiffersInExactlyOneRecord) {
  RngStream rng(2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const NeighborPair p = random_neighbor_pair(20, 3, 2.0, rng);
    const Dataset& a = p.first();
    const Dataset& b = p.second();
    ASSERT_EQ(a.n(), b.n());
    ASSERT_EQ(a.d(), b.d());
    EXPECT_EQ(a.bound(), b.bound());
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.n(); ++i) {
      if (a.row(i) != b.row(i) || a.y()[i] != b.y()[i]) {
        ++differing;
        EXPECT_EQ(i, p.index());
      }
    }
    EXPECT_EQ(differing, 1u);
  }
}

TEST(NeighborPair, SharesTheBaseAndSwaps) {
  auto base = std::make_shared<const Dataset>(random_data(10, 2, 3));
  const NeighborPair p = make_neighbor_pair(base, 4, std::vector<double>{0.1, 0.2}, 0.5);
  EXPECT_EQ(&p.first(), base.get());
  EXPECT_EQ(p.second().y()[4], 0.5);
  const NeighborPair q = p.swapped();
  EXPECT_EQ(&q.second(), base.get());
  EXPECT_EQ(&q.first(), &p.second());
  EXPECT_EQ(q.index(), 4u);
}

TEST(NeighborPair, RejectsNoOpAndOutOfBoundsReplacements) {
  auto base = std::make_shared<const Dataset>(random_data(10, 2, 3));
  EXPECT_THROW(make_neighbor_pair(base, 4, base->row(4), base->y()[4]), InvalidArgument);
  EXPECT_THROW(make_neighbor_pair(base, 4, std::vector<double>{0.8, 0.8}, 0.0),
               InvalidArgument);
  EXPECT_THROW(make_neighbor_pair(base, 4, std::vector<double>{0.1, 0.1}, 2.5),
               InvalidArgument);
  EXPECT_THROW(make_neighbor_pair(base, 10, std::vector<double>{0.1, 0.1}, 0.0),
               InvalidArgument);
}

TEST(RandomRecords, RespectTheBounds) {
  RngStream rng(3, 3);
  double max_norm = 0.0, max_y = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const auto [x, y] = random_bounded_record(4, 1.5, rng);
    double norm = 0.0;
    for (double v : x) norm += std::fabs(v);
    max_norm = std::max(max_norm, norm);
    max_y = std::max(max_y, std::fabs(y));
  }
  EXPECT_LE(max_norm, 1.0);
  EXPECT_GT(max_norm, 0.99);
  EXPECT_LE(max_y, 1.5);
  EXPECT_GT(max_y, 1.49);
}

TEST(Checks, RelationsAndReporting) {
  EXPECT_TRUE(make_check("a", 1.0, "<=", 1.0).passed);
  EXPECT_FALSE(make_check("a", 1.0, "<", 1.0).passed);
  EXPECT_TRUE(make_check("a", 2.0, ">=", 1.0).passed);
  EXPECT_FALSE(make_check("a", std::nan(""), "<=", 1.0).passed);
}

TEST(Checks, SamplerChecksPass) {
  RngStream rng(4, 4);
  for (const CheckResult& c : sampler_checks(200000, rng)) {
    EXPECT_TRUE(c.passed) << c.name << " " << c.observed << " " << c.relation << " " << c.bound;
  }
}

TEST(Checks, KsDistanceDetectsWrongScale) {
  RngStream rng(4, 5);
  std::vector<double> draws(20000);
  for (double& v : draws) v = draw_laplace(1.0, rng);
  EXPECT_LT(ks_distance_laplace(draws, 1.0), 0.015);
  EXPECT_GT(ks_distance_laplace(draws, 1.5), 0.05);
}

}  // namespace
}  // namespace dpmr
