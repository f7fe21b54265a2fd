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

#ifndef DPMR_KERNELS_HPP_
#define DPMR_KERNELS_HPP_

// Per-sample arithmetic used by every solver. Each entry has a scalar
// reference implementation and, where the CPU supports it, a SIMD variant.
// Reductions use blocked pairwise summation with identical block boundaries
// in every variant, so variants differ only by rounding inside a block.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dpmr::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

struct SignKinkSums {
  double signed_sum = 0.0;  // sum of sign(r_i) * x_i
  double kink_sum = 0.0;    // sum of |x_i| over r_i == 0

  SignKinkSums& operator+=(const SignKinkSums& o) {
    signed_sum += o.signed_sum;
    kink_sum += o.kink_sum;
    return *this;
  }
  friend SignKinkSums operator+(SignKinkSums a, const SignKinkSums& b) {
    return a += b;
  }
};

struct KernelTable {
  Isa isa;

  // r_i = mu + sum_k beta_k x_{ik} - y_i, X column-major with n rows.
  void (*residuals)(std::span<const double> x_colmajor, std::size_t n,
                    double mu, std::span<const double> beta,
                    std::span<const double> y, std::span<double> r);
  double (*sum)(std::span<const double> a);
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // sum_i w_i a_i b_i
  double (*wdot)(std::span<const double> w, std::span<const double> a,
                 std::span<const double> b);
  double (*abs_sum)(std::span<const double> a);
  // sum_i rho_gamma(r_i)
  double (*huber_sum)(std::span<const double> r, double gamma);
  // out_i = (1/gamma) w_i r_i + s_i, which is clamp(r_i / gamma, -1, 1)
  void (*huber_bracket)(std::span<const double> r, double gamma,
                        std::span<double> out);
  // w_i = 1 if |r_i| <= gamma else 0
  void (*huber_band)(std::span<const double> r, double gamma,
                     std::span<double> w);
  // w_i = 1 / (|r_i| + e)
  void (*irls_weights)(std::span<const double> r, double e,
                       std::span<double> w);
  SignKinkSums (*sign_kink_sums)(std::span<const double> r,
                                 std::span<const double> x);
};

// Table selected at first use: the widest ISA the CPU supports, unless the
// DPMR_KERNELS environment variable names one ("scalar", "avx2", "neon").
const KernelTable& active();

// Specific table; throws InvalidArgument if not compiled in or not supported
// by the running CPU.
const KernelTable& table(Isa isa);

std::vector<Isa> available();

}  // namespace dpmr::kernels

#endif  // DPMR_KERNELS_HPP_
