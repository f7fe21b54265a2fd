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

#include "dpmr/sampling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dpmr/model.hpp"
#include "dpmr/rng.hpp"
#include "dpmr/verification.hpp"

namespace dpmr {
namespace {

TEST(Rng, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
}

TEST(Rng, SubstreamsDependOnTagOnly) {
  const RngStream root(5, 1);
  RngStream s1 = root.substream(3), s2 = root.substream(3), s3 = root.substream(4);
  EXPECT_EQ(s1.next_u64(), s2.next_u64());
  EXPECT_NE(s1.next_u64(), s3.next_u64());
  EXPECT_NE(stream_id({1, 2}), stream_id({2, 1}));
}

TEST(Rng, UniformStaysInsideOpenInterval) {
  RngStream rng(1, 1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform_open01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / kN, 0.5, 0.005);
}

TEST(Rng, BelowIsInRangeAndCoversAllValues) {
  RngStream rng(9, 9);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(rng.below(0), InvalidArgument);
}

TEST(Laplace, QuantileInvertsCdf) {
  for (double u : {1e-9, 0.01, 0.3, 0.5, 0.77, 0.999}) {
    EXPECT_NEAR(laplace_cdf(laplace_quantile(u, 2.5), 2.5), u, 1e-12);
  }
  EXPECT_DOUBLE_EQ(laplace_quantile(0.5, 3.0), 0.0);
}

TEST(Laplace, KolmogorovSmirnovDistanceIsSmall) {
  RngStream rng(2024, 3);
  std::vector<double> v(100000);
  for (double& x : v) x = draw_laplace(1.5, rng);
  EXPECT_LT(ks_distance_laplace(v, 1.5), 0.01);
  // A wrong scale is detected.
  EXPECT_GT(ks_distance_laplace(v, 3.0), 0.05);
}

TEST(Laplace, MedianOfMillionDrawsIsZero) {
  RngStream rng(77, 0);
  std::vector<double> v(1000000);
  for (double& x : v) x = draw_laplace(2.0, rng);
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  EXPECT_NEAR(v[v.size() / 2], 0.0, 0.01);
}

TEST(Laplace, VectorSamplerValidatesAndRecordsScale) {
  RngStream rng(1, 2);
  const NoiseVector nv = sample_laplace(0.7, 4, rng);
  EXPECT_EQ(nv.values.size(), 4u);
  EXPECT_EQ(nv.scale, 0.7);
  EXPECT_EQ(nv.kind, NoiseKind::kLaplaceIid);
  EXPECT_THROW(sample_laplace(0.0, 4, rng), InvalidArgument);
  EXPECT_THROW(sample_laplace(1.0, 0, rng), InvalidArgument);
}

TEST(L1Perturbation, NormEqualsGammaRadius) {
  RngStream rng(4, 4);
  for (int i = 0; i < 100; ++i) {
    const NoiseVector b = sample_l1_perturbation(4, 0.1, rng);
    EXPECT_NEAR(b.l1_norm(), b.radius, 1e-12 * b.radius);
    EXPECT_EQ(b.scale, 40.0);
  }
  EXPECT_THROW(sample_l1_perturbation(0, 0.1, rng), InvalidArgument);
  EXPECT_THROW(sample_l1_perturbation(3, -1.0, rng), InvalidArgument);
}

TEST(L1Perturbation, RadiusMomentsMatchGamma) {
  // Gamma(4, 40): mean 160, variance 6400.
  RngStream rng(8, 8);
  constexpr int kN = 100000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double r = sample_l1_perturbation(4, 0.1, rng).l1_norm();
    s += r;
    s2 += r * r;
  }
  const double mean = s / kN;
  EXPECT_NEAR(mean, 160.0, 0.02 * 160.0);
  EXPECT_NEAR(s2 / kN - mean * mean, 6400.0, 0.05 * 6400.0);
}

TEST(L1Perturbation, DirectionIsSymmetric) {
  RngStream rng(12, 1);
  std::vector<double> mean(3, 0.0);
  constexpr int kN = 20000;
  for (int i = 0; i < kN; ++i) {
    const NoiseVector b = sample_l1_perturbation(3, 1.0, rng);
    for (std::size_t j = 0; j < 3; ++j) mean[j] += b.values[j] / b.radius / kN;
  }
  for (double m : mean) EXPECT_NEAR(m, 0.0, 0.02);
}

TEST(GammaTail, ClosedFormValue) {
  // 4 (d+1) ln((d+1)/alpha) / epsilon with d = 3, alpha = 0.1, epsilon = 0.1
  EXPECT_NEAR(gamma_tail_bound(3, 0.1, 0.1), 16.0 * std::log(40.0) / 0.1, 1e-12);
  EXPECT_NEAR(gamma_tail_bound(3, 0.1, 0.1), 590.23, 0.01);
  EXPECT_THROW(gamma_tail_bound(3, 1.0, 0.1), InvalidArgument);
  EXPECT_THROW(gamma_tail_bound(3, 0.1, 0.0), InvalidArgument);
}

TEST(GammaTail, CoverageAtLeastOneMinusAlpha) {
  RngStream rng(99, 1);
  const auto checks = sampler_checks(100000, rng);
  ASSERT_EQ(checks.size(), 5u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << " observed " << c.observed;
}

}  // namespace
}  // namespace dpmr
