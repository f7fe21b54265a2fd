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

// NEON (AArch64) variants. Advanced SIMD is mandatory on AArch64, so no
// runtime feature check is needed beyond the architecture.

#include <arm_neon.h>

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
  double* out = r.data();
  for (std::size_t i = 0; i < n; ++i) out[i] = mu;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double* col = x.data() + k * n;
    const float64x2_t vb = vdupq_n_f64(beta[k]);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      vst1q_f64(out + i, vfmaq_f64(vld1q_f64(out + i), vb, vld1q_f64(col + i)));
    }
    for (; i < n; ++i) out[i] = std::fma(beta[k], col[i], out[i]);
  }
  for (std::size_t i = 0; i < n; ++i) out[i] -= y[i];
}

template <class Lane, class Tail>
double reduce(std::size_t n, const Lane& lane, const Tail& tail) {
  return pairwise<double>(0, n, [&](std::size_t b, std::size_t e) {
    float64x2_t s0 = vdupq_n_f64(0.0), s1 = vdupq_n_f64(0.0);
    std::size_t i = b;
    for (; i + 4 <= e; i += 4) {
      s0 = vaddq_f64(s0, lane(i));
      s1 = vaddq_f64(s1, lane(i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(s0, s1));
    for (; i < e; ++i) s += tail(i);
    return s;
  });
}

double sum(std::span<const double> a) {
  const double* p = a.data();
  return reduce(
      a.size(), [&](std::size_t i) { return vld1q_f64(p + i); },
      [&](std::size_t i) { return p[i]; });
}

double dot(std::span<const double> a, std::span<const double> c) {
  const double* p = a.data();
  const double* q = c.data();
  return reduce(
      a.size(),
      [&](std::size_t i) { return vmulq_f64(vld1q_f64(p + i), vld1q_f64(q + i)); },
      [&](std::size_t i) { return p[i] * q[i]; });
}

double wdot(std::span<const double> w, std::span<const double> a,
            std::span<const double> c) {
  const double* pw = w.data();
  const double* p = a.data();
  const double* q = c.data();
  return reduce(
      a.size(),
      [&](std::size_t i) {
        return vmulq_f64(vmulq_f64(vld1q_f64(pw + i), vld1q_f64(p + i)),
                         vld1q_f64(q + i));
      },
      [&](std::size_t i) { return pw[i] * p[i] * q[i]; });
}

double abs_sum(std::span<const double> a) {
  const double* p = a.data();
  return reduce(
      a.size(), [&](std::size_t i) { return vabsq_f64(vld1q_f64(p + i)); },
      [&](std::size_t i) { return std::fabs(p[i]); });
}

double huber_sum(std::span<const double> r, double gamma) {
  const double* p = r.data();
  const float64x2_t g = vdupq_n_f64(gamma);
  const float64x2_t half_g = vdupq_n_f64(0.5 * gamma);
  const float64x2_t two_g = vdupq_n_f64(2.0 * gamma);
  return reduce(
      r.size(),
      [&](std::size_t i) {
        const float64x2_t v = vld1q_f64(p + i);
        const float64x2_t a = vabsq_f64(v);
        const float64x2_t quad = vdivq_f64(vmulq_f64(v, v), two_g);
        const float64x2_t lin = vsubq_f64(a, half_g);
        return vbslq_f64(vcleq_f64(a, g), quad, lin);
      },
      [&](std::size_t i) {
        const double a = std::fabs(p[i]);
        return a <= gamma ? p[i] * p[i] / (2.0 * gamma) : a - 0.5 * gamma;
      });
}

void huber_bracket(std::span<const double> r, double gamma,
                   std::span<double> out) {
  const float64x2_t g = vdupq_n_f64(gamma);
  const float64x2_t one = vdupq_n_f64(1.0);
  const float64x2_t minus_one = vdupq_n_f64(-1.0);
  std::size_t i = 0;
  for (; i + 2 <= r.size(); i += 2) {
    const float64x2_t q = vdivq_f64(vld1q_f64(r.data() + i), g);
    vst1q_f64(out.data() + i, vminq_f64(vmaxq_f64(q, minus_one), one));
  }
  for (; i < r.size(); ++i) {
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
  const float64x2_t ve = vdupq_n_f64(e);
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= r.size(); i += 2) {
    const float64x2_t a = vabsq_f64(vld1q_f64(r.data() + i));
    vst1q_f64(w.data() + i, vdivq_f64(one, vaddq_f64(a, ve)));
  }
  for (; i < r.size(); ++i) w[i] = 1.0 / (std::fabs(r[i]) + e);
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

const KernelTable kNeonTable = {
    Isa::kNeon,   residuals,     sum,           dot,        wdot,
    abs_sum,      huber_sum,     huber_bracket, huber_band, irls_weights,
    sign_kink_sums,
};

}  // namespace dpmr::kernels
