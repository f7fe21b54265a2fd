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

#include "dpmr/model.hpp"

#include <cmath>
#include <string>

namespace dpmr {
namespace {

void check_row(std::span<const double> x_row, double y, double bound,
               std::size_t index) {
  double norm = 0.0;
  for (double v : x_row) {
    if (!std::isfinite(v)) {
      throw InvalidArgument("record " + std::to_string(index) +
                            ": non-finite predictor");
    }
    norm += std::fabs(v);
  }
  if (norm > 1.0 + kBoundSlack) {
    throw InvalidArgument("record " + std::to_string(index) +
                          ": predictor row L1 norm " + std::to_string(norm) +
                          " exceeds 1");
  }
  if (!std::isfinite(y) || std::fabs(y) > bound * (1.0 + kBoundSlack)) {
    throw InvalidArgument("record " + std::to_string(index) + ": |y| = " +
                          std::to_string(std::fabs(y)) + " exceeds bound " +
                          std::to_string(bound));
  }
}

}  // namespace

std::vector<double> Theta::stacked() const {
  std::vector<double> omega;
  omega.reserve(beta.size() + 1);
  omega.push_back(mu);
  omega.insert(omega.end(), beta.begin(), beta.end());
  return omega;
}

Theta Theta::from_stacked(std::span<const double> omega) {
  if (omega.empty()) throw DimensionMismatch("stacked theta must be non-empty");
  return Theta(omega[0], std::vector<double>(omega.begin() + 1, omega.end()));
}

double l1_distance(const Theta& a, const Theta& b) {
  if (a.d() != b.d()) throw DimensionMismatch("l1_distance: d differs");
  double s = std::fabs(a.mu - b.mu);
  for (std::size_t k = 0; k < a.d(); ++k) s += std::fabs(a.beta[k] - b.beta[k]);
  return s;
}

double linf_norm(const Theta& t) {
  double m = std::fabs(t.mu);
  for (double b : t.beta) m = std::max(m, std::fabs(b));
  return m;
}

double beta_sq_norm(const Theta& t) {
  double s = 0.0;
  for (double b : t.beta) s += b * b;
  return s;
}

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<double> x_colmajor,
                 std::vector<double> y, double bound)
    : n_(n), d_(d), bound_(bound), x_(std::move(x_colmajor)), y_(std::move(y)) {
  if (n_ == 0 || d_ == 0) throw InvalidArgument("dataset needs n >= 1, d >= 1");
  if (!(bound_ > 0.0) || !std::isfinite(bound_)) {
    throw InvalidArgument("response bound B must be positive and finite");
  }
  if (x_.size() != n_ * d_) throw DimensionMismatch("X has wrong size");
  if (y_.size() != n_) throw DimensionMismatch("Y length differs from n");
  std::vector<double> row_buf(d_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < d_; ++k) row_buf[k] = x_[k * n_ + i];
    check_row(row_buf, y_[i], bound_, i);
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           std::vector<double> y, double bound) {
  if (rows.empty()) throw InvalidArgument("dataset needs n >= 1");
  const std::size_t n = rows.size();
  const std::size_t d = rows.front().size();
  std::vector<double> x(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != d) throw DimensionMismatch("ragged predictor rows");
    for (std::size_t k = 0; k < d; ++k) x[k * n + i] = rows[i][k];
  }
  return Dataset(n, d, std::move(x), std::move(y), bound);
}

std::vector<double> Dataset::row(std::size_t i) const {
  std::vector<double> out(d_);
  for (std::size_t k = 0; k < d_; ++k) out[k] = x_[k * n_ + i];
  return out;
}

Dataset Dataset::with_record(std::size_t i, std::span<const double> x_row,
                             double y_value) const {
  if (i >= n_) throw InvalidArgument("record index out of range");
  if (x_row.size() != d_) throw DimensionMismatch("replacement row length");
  check_row(x_row, y_value, bound_, i);
  Dataset copy = *this;
  for (std::size_t k = 0; k < d_; ++k) copy.x_[k * n_ + i] = x_row[k];
  copy.y_[i] = y_value;
  return copy;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  const std::size_t m = indices.size();
  std::vector<double> x(m * d_);
  std::vector<double> y(m);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = indices[j];
    if (i >= n_) throw InvalidArgument("subset index out of range");
    for (std::size_t k = 0; k < d_; ++k) x[k * m + j] = x_[k * n_ + i];
    y[j] = y_[i];
  }
  return Dataset(m, d_, std::move(x), std::move(y), bound_);
}

void check_dims(const Theta& theta, const Dataset& data) {
  if (theta.d() != data.d()) {
    throw DimensionMismatch("theta has " + std::to_string(theta.d()) +
                            " coefficients but dataset has d = " +
                            std::to_string(data.d()));
  }
}

void ObjectiveConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be finite and >= 0");
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("gamma must be finite and > 0");
  }
  if (!(e > 0.0) || !std::isfinite(e)) {
    throw InvalidArgument("e must be finite and > 0");
  }
}

}  // namespace dpmr
