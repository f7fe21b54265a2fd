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

#ifndef DPMR_MODEL_HPP_
#define DPMR_MODEL_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpmr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain or precondition violation in caller-supplied values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Normal-equation system is not positive definite.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

// Relative slack allowed on the row-norm and response bounds so that data
// divided by its own maximum still passes validation after rounding.
inline constexpr double kBoundSlack = 1e-12;

// Intercept plus coefficient vector. Also used for gradients of the same
// shape; the stacked form is omega = (mu, beta_1, ..., beta_d).
struct Theta {
  double mu = 0.0;
  std::vector<double> beta;

  Theta() = default;
  explicit Theta(std::size_t d) : beta(d, 0.0) {}
  Theta(double mu_in, std::vector<double> beta_in)
      : mu(mu_in), beta(std::move(beta_in)) {}

  std::size_t d() const { return beta.size(); }

  std::vector<double> stacked() const;
  static Theta from_stacked(std::span<const double> omega);

  friend bool operator==(const Theta&, const Theta&) = default;
};

double l1_distance(const Theta& a, const Theta& b);
double linf_norm(const Theta& t);
double beta_sq_norm(const Theta& t);

// Bounded regression data: every row of X has L1 norm <= 1 and every
// |Y_i| <= B. X is stored column-major so per-predictor sweeps over the
// samples are contiguous.
class Dataset {
 public:
  // x_colmajor[k * n + i] is predictor k of record i.
  Dataset(std::size_t n, std::size_t d, std::vector<double> x_colmajor,
          std::vector<double> y, double bound);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           std::vector<double> y, double bound);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  double bound() const { return bound_; }

  std::span<const double> column(std::size_t k) const {
    return {x_.data() + k * n_, n_};
  }
  std::span<const double> y() const { return y_; }
  std::span<const double> x_colmajor() const { return x_; }

  double x(std::size_t i, std::size_t k) const { return x_[k * n_ + i]; }
  std::vector<double> row(std::size_t i) const;

  // Copy with record i replaced; the replacement must satisfy the bounds.
  Dataset with_record(std::size_t i, std::span<const double> x_row,
                      double y_value) const;
  Dataset subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t n_;
  std::size_t d_;
  double bound_;
  std::vector<double> x_;
  std::vector<double> y_;
};

// Throws DimensionMismatch unless theta.d() == data.d().
void check_dims(const Theta& theta, const Dataset& data);

// An iterative solver ran out of iterations or stalled; carries the last
// iterate so callers can inspect or restart from it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Theta last, std::size_t iterations,
                   double grad_norm)
      : Error(what),
        last_iterate_(std::move(last)),
        iterations_(iterations),
        grad_norm_(grad_norm) {}

  const Theta& last_iterate() const { return last_iterate_; }
  std::size_t iterations() const { return iterations_; }
  double grad_norm() const { return grad_norm_; }

 private:
  Theta last_iterate_;
  std::size_t iterations_;
  double grad_norm_;
};

struct ObjectiveConfig {
  double lambda = 0.0;
  double gamma = 0.05;
  double e = 0.2;

  void validate() const;
};

struct Residuals {
  std::vector<double> r;
};

}  // namespace dpmr

#endif  // DPMR_MODEL_HPP_
