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

#include "linalg.hpp"

#include <vector>

#include "dpmr/kernels.hpp"

namespace dpmr::detail {

Eigen::MatrixXd weighted_gram(const Dataset& data, std::span<const double> w) {
  const auto& kt = kernels::active();
  const std::size_t d = data.d();
  Eigen::MatrixXd a(d + 1, d + 1);
  a(0, 0) = kt.sum(w);
  for (std::size_t j = 0; j < d; ++j) {
    const double v = kt.dot(w, data.column(j));
    a(0, j + 1) = v;
    a(j + 1, 0) = v;
    for (std::size_t k = j; k < d; ++k) {
      const double g = kt.wdot(w, data.column(j), data.column(k));
      a(j + 1, k + 1) = g;
      a(k + 1, j + 1) = g;
    }
  }
  return a;
}

Eigen::VectorXd weighted_moment(const Dataset& data,
                                std::span<const double> w) {
  const auto& kt = kernels::active();
  Eigen::VectorXd m(data.d() + 1);
  m(0) = kt.dot(w, data.y());
  for (std::size_t k = 0; k < data.d(); ++k) {
    m(k + 1) = kt.wdot(w, data.column(k), data.y());
  }
  return m;
}

std::optional<Eigen::VectorXd> spd_solve(const Eigen::MatrixXd& a,
                                         const Eigen::VectorXd& rhs,
                                         double rel_pivot_floor) {
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const double max_diag = a.diagonal().cwiseAbs().maxCoeff();
  const Eigen::VectorXd piv = llt.matrixLLT().diagonal();
  if (!(piv.array().square().minCoeff() > rel_pivot_floor * max_diag)) {
    return std::nullopt;
  }
  Eigen::VectorXd x = llt.solve(rhs);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

Eigen::VectorXd to_vector(const Theta& t) {
  Eigen::VectorXd v(t.d() + 1);
  v(0) = t.mu;
  for (std::size_t k = 0; k < t.d(); ++k) v(k + 1) = t.beta[k];
  return v;
}

Theta to_theta(const Eigen::VectorXd& omega) {
  Theta t(static_cast<std::size_t>(omega.size()) - 1);
  t.mu = omega(0);
  for (std::size_t k = 0; k < t.d(); ++k) t.beta[k] = omega(k + 1);
  return t;
}

}  // namespace dpmr::detail
