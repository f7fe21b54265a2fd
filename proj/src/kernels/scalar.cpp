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

#include <cmath>

#include "dpmr/kernels.hpp"
#include "kernels/pairwise.hpp"
#include "kernels/tables.hpp"

namespace dpmr::kernels {
namespace {

using detail::pairwise;

void residuals(std::span<const double> x, std::size_t n, double mu,
               std::span<const double> beta, std::span<const double> y,
               std::span<double> r) {
  for (std::size_t i = 0; i < n; ++i) r[i] = mu;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double b = beta[k];
    const double* col = x.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) r[i] += b * col[i];
  }
  for (std::size_t i = 0; i < n; ++i) r[i] -= y[i];
}

double sum(std::span<const double> a) {
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += a[i];
    return s;
  });
}

double dot(std::span<const double> a, std::span<const double> c) {
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += a[i] * c[i];
    return s;
  });
}

double wdot(std::span<const double> w, std::span<const double> a,
            std::span<const double> c) {
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += w[i] * a[i] * c[i];
    return s;
  });
}

double abs_sum(std::span<const double> a) {
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += std::fabs(a[i]);
    return s;
  });
}

double huber_sum(std::span<const double> r, double gamma) {
  const double half_gamma = 0.5 * gamma;
  const double two_gamma = 2.0 * gamma;
  return pairwise<double>(0, r.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) {
      const double a = std::fabs(r[i]);
      s += a <= gamma ? r[i] * r[i] / two_gamma : a - half_gamma;
    }
    return s;
  });
}

void huber_bracket(std::span<const double> r, double gamma,
                   std::span<double> out) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double q = r[i] / gamma;
    out[i] = q > 1.0 ? 1.0 : (q < -1.0 ? -1.0 : q);
  }
}

void huber_band(std::span<const double> r, double gamma, std::span<double> w) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    w[i] = std::fabs(r[i]) <= gamma ? 1.0 : 0.0;
  }
}

void irls_weights(std::span<const double> r, double e, std::span<double> w) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    w[i] = 1.0 / (std::fabs(r[i]) + e);
  }
}

SignKinkSums sign_kink_sums(std::span<const double> r,
                            std::span<const double> x) {
  return pairwise<SignKinkSums>(
      0, r.size(), [&](std::size_t b, std::size_t e) {
        SignKinkSums s;
        for (std::size_t i = b; i < e; ++i) {
          if (r[i] > 0.0) {
            s.signed_sum += x[i];
          } else if (r[i] < 0.0) {
            s.signed_sum -= x[i];
          } else {
            s.kink_sum += std::fabs(x[i]);
          }
        }
        return s;
      });
}

}  // namespace

const KernelTable kScalarTable = {
    Isa::kScalar, residuals,     sum,        dot,          wdot,
    abs_sum,      huber_sum,     huber_bracket, huber_band, irls_weights,
    sign_kink_sums,
};

}  // namespace dpmr::kernels
