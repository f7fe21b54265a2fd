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

#include "dpmr/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "dpmr/sampling.hpp"

namespace dpmr {
namespace {

// Scales within this relative distance of 1 are treated as 1, which keeps
// normalize idempotent after rounding.
constexpr double kScaleSlack = 1e-12;

}  // namespace

void Table::validate() const {
  if (n == 0 || d == 0) throw InvalidArgument("table needs n >= 1 and d >= 1");
  if (x.size() != n * d || y.size() != n) {
    throw DimensionMismatch("table storage does not match n and d");
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidArgument("table has a non-finite covariate");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidArgument("table has a non-finite response");
  }
}

Table to_table(const Dataset& data) {
  const auto x = data.x_colmajor();
  const auto y = data.y();
  return {data.n(), data.d(), {x.begin(), x.end()}, {y.begin(), y.end()}};
}

void GeneratorSpec::validate() const {
  if (n == 0) throw InvalidArgument("generator: n must be >= 1");
  if (true_beta.empty()) throw InvalidArgument("generator: beta must be non-empty");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw InvalidArgument("generator: noise scale must be finite and >= 0");
  }
  if (!std::isfinite(true_mu) ||
      !std::all_of(true_beta.begin(), true_beta.end(),
                   [](double b) { return std::isfinite(b); })) {
    throw InvalidArgument("generator: coefficients must be finite");
  }
  if (!(covariate_lo < covariate_hi) || !std::isfinite(covariate_lo) ||
      !std::isfinite(covariate_hi)) {
    throw InvalidArgument("generator: covariate box must satisfy lo < hi");
  }
}

Generated generate(const GeneratorSpec& spec, RngStream& rng) {
  spec.validate();
  const std::size_t n = spec.n;
  const std::size_t d = spec.d();
  Generated out{{n, d, std::vector<double>(n * d), std::vector<double>(n)},
                spec.truth()};
  const double width = spec.covariate_hi - spec.covariate_lo;
  for (std::size_t i = 0; i < n; ++i) {
    double yi = spec.true_mu;
    for (std::size_t k = 0; k < d; ++k) {
      const double xik = spec.covariate_lo + width * rng.uniform_open01();
      out.table.x[k * n + i] = xik;
      yi += spec.true_beta[k] * xik;
    }
    if (spec.noise_scale > 0.0) yi += draw_laplace(spec.noise_scale, rng);
    out.table.y[i] = yi;
  }
  return out;
}

Normalized normalize(const Table& table, double target_bound) {
  table.validate();
  if (!(target_bound > 0.0) || !std::isfinite(target_bound)) {
    throw InvalidArgument("normalize: target bound must be finite and > 0");
  }
  const std::size_t n = table.n;
  double max_row = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (std::size_t k = 0; k < table.d; ++k) norm += std::fabs(table.at(i, k));
    max_row = std::max(max_row, norm);
  }
  if (max_row == 0.0) throw InvalidArgument("normalize: all covariates are zero");
  double max_y = 0.0;
  for (double v : table.y) max_y = std::max(max_y, std::fabs(v));

  ScalingRecord rec;
  rec.bound = target_bound;
  if (max_row > 1.0 + kScaleSlack) rec.x_scale = max_row;
  if (max_y / target_bound > 1.0 + kScaleSlack) rec.y_scale = max_y / target_bound;

  std::vector<double> x(table.x);
  std::vector<double> y(table.y);
  for (double& v : x) v /= rec.x_scale;
  for (double& v : y) v /= rec.y_scale;
  return {Dataset(n, table.d, std::move(x), std::move(y), target_bound), rec};
}

Theta unscale_theta(const Theta& theta, const ScalingRecord& rec) {
  if (!(rec.x_scale > 0.0) || !(rec.y_scale > 0.0)) {
    throw InvalidArgument("unscale_theta: scales must be positive");
  }
  Theta out(theta.mu * rec.y_scale, theta.beta);
  for (double& b : out.beta) b *= rec.y_scale / rec.x_scale;
  return out;
}

}  // namespace dpmr
