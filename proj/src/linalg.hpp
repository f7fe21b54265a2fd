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

#ifndef DPMR_LINALG_HPP_
#define DPMR_LINALG_HPP_

// Small dense systems in the stacked omega = (mu, beta) coordinates. Not part
// of the public API so Eigen stays out of installed headers.

#include <Eigen/Dense>
#include <optional>
#include <span>

#include "dpmr/model.hpp"

namespace dpmr::detail {

// X~' diag(w) X~ with X~ = [1, X]; (d+1) x (d+1).
Eigen::MatrixXd weighted_gram(const Dataset& data, std::span<const double> w);

// X~' diag(w) Y.
Eigen::VectorXd weighted_moment(const Dataset& data,
                                std::span<const double> w);

// Cholesky solve of an SPD system. Returns nullopt when a pivot is not
// positive or falls below `rel_pivot_floor` times the largest diagonal entry.
std::optional<Eigen::VectorXd> spd_solve(const Eigen::MatrixXd& a,
                                         const Eigen::VectorXd& rhs,
                                         double rel_pivot_floor = 1e-14);

Eigen::VectorXd to_vector(const Theta& t);
Theta to_theta(const Eigen::VectorXd& omega);

}  // namespace dpmr::detail

#endif  // DPMR_LINALG_HPP_
