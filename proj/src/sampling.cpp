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

#include <cmath>

#include "dpmr/model.hpp"

namespace dpmr {
namespace {

void check_scale(double scale, const char* what) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

double NoiseVector::l1_norm() const {
  double s = 0.0;
  for (double v : values) s += std::fabs(v);
  return s;
}

double laplace_quantile(double u, double scale) {
  return u < 0.5 ? scale * std::log(2.0 * u)
                 : -scale * std::log(2.0 * (1.0 - u));
}

double laplace_cdf(double x, double scale) {
  return x < 0.0 ? 0.5 * std::exp(x / scale)
                 : 1.0 - 0.5 * std::exp(-x / scale);
}

double draw_laplace(double scale, RngStream& rng) {
  return laplace_quantile(rng.uniform_open01(), scale);
}

double draw_gamma_integer_shape(std::size_t shape, double scale,
                                RngStream& rng) {
  double total = 0.0;
  for (std::size_t j = 0; j < shape; ++j) {
    total += -scale * std::log(rng.uniform_open01());
  }
  return total;
}

NoiseVector sample_laplace(double scale, std::size_t k, RngStream& rng) {
  check_scale(scale, "Laplace scale");
  if (k == 0) throw InvalidArgument("sample_laplace: k must be >= 1");
  NoiseVector out;
  out.kind = NoiseKind::kLaplaceIid;
  out.scale = scale;
  out.values.resize(k);
  for (double& v : out.values) v = draw_laplace(scale, rng);
  return out;
}

NoiseVector sample_l1_perturbation(std::size_t dim, double epsilon,
                                   RngStream& rng) {
  check_scale(epsilon, "epsilon");
  if (dim == 0) throw InvalidArgument("sample_l1_perturbation: dim must be >= 1");
  NoiseVector out;
  out.kind = NoiseKind::kL1GammaDirection;
  out.scale = 4.0 / epsilon;
  out.radius = draw_gamma_integer_shape(dim, out.scale, rng);
  out.values.resize(dim);
  double norm = 0.0;
  for (double& v : out.values) {
    v = draw_laplace(1.0, rng);
    norm += std::fabs(v);
  }
  for (double& v : out.values) v *= out.radius / norm;
  return out;
}

double gamma_tail_bound(std::size_t d, double alpha, double epsilon) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("gamma_tail_bound: alpha must lie in (0, 1)");
  }
  check_scale(epsilon, "epsilon");
  const double dim = static_cast<double>(d + 1);
  return 4.0 * dim * std::log(dim / alpha) / epsilon;
}

}  // namespace dpmr
