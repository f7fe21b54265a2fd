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

// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and is only reached through dispatch after a CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "dpmr/kernels.hpp"
#include "kernels/pairwise.hpp"
#include "kernels/tables.hpp"

namespace dpmr::kernels {
namespace {

using detail::pairwise;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Runs `body(i)` on 8-wide strides and returns the index where the scalar
// tail starts.
template <class Body>
std::size_t stride8(std::size_t b, std::size_t e, const Body& body) {
  std::size_t i = b;
  for (; i + 8 <= e; i += 8) body(i);
  return i;
}

void residuals(std::span<const double> x, std::size_t n, double mu,
               std::span<const double> beta, std::span<const double> y,
               std::span<double> r) {
  double* out = r.data();
  const __m256d vmu = _mm256_set1_pd(mu);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, vmu);
  for (; i < n; ++i) out[i] = mu;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double* col = x.data() + k * n;
    const __m256d vb = _mm256_set1_pd(beta[k]);
    i = 0;
    for (; i + 4 <= n; i += 4) {
      _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(col + i),
                                                _mm256_loadu_pd(out + i)));
    }
    for (; i < n; ++i) out[i] = std::fma(beta[k], col[i], out[i]);
  }
  i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(out + i),
                                            _mm256_loadu_pd(y.data() + i)));
  }
  for (; i < n; ++i) out[i] -= y[i];
}

double sum(std::span<const double> a) {
  const double* p = a.data();
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = stride8(b, e, [&](std::size_t j) {
      s0 = _mm256_add_pd(s0, _mm256_loadu_pd(p + j));
      s1 = _mm256_add_pd(s1, _mm256_loadu_pd(p + j + 4));
    });
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < e; ++i) s += p[i];
    return s;
  });
}

double dot(std::span<const double> a, std::span<const double> c) {
  const double* p = a.data();
  const double* q = c.data();
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = stride8(b, e, [&](std::size_t j) {
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(p + j), _mm256_loadu_pd(q + j), s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(p + j + 4),
                           _mm256_loadu_pd(q + j + 4), s1);
    });
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < e; ++i) s += p[i] * q[i];
    return s;
  });
}

double wdot(std::span<const double> w, std::span<const double> a,
            std::span<const double> c) {
  const double* pw = w.data();
  const double* p = a.data();
  const double* q = c.data();
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = stride8(b, e, [&](std::size_t j) {
      const __m256d t0 =
          _mm256_mul_pd(_mm256_loadu_pd(pw + j), _mm256_loadu_pd(p + j));
      const __m256d t1 = _mm256_mul_pd(_mm256_loadu_pd(pw + j + 4),
                                       _mm256_loadu_pd(p + j + 4));
      s0 = _mm256_fmadd_pd(t0, _mm256_loadu_pd(q + j), s0);
      s1 = _mm256_fmadd_pd(t1, _mm256_loadu_pd(q + j + 4), s1);
    });
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < e; ++i) s += pw[i] * p[i] * q[i];
    return s;
  });
}

double abs_sum(std::span<const double> a) {
  const double* p = a.data();
  return pairwise<double>(0, a.size(), [&](std::size_t b, std::size_t e) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = stride8(b, e, [&](std::size_t j) {
      s0 = _mm256_add_pd(s0, vabs(_mm256_loadu_pd(p + j)));
      s1 = _mm256_add_pd(s1, vabs(_mm256_loadu_pd(p + j + 4)));
    });
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < e; ++i) s += std::fabs(p[i]);
    return s;
  });
}

inline __m256d huber_lanes(__m256d r, __m256d g, __m256d half_g,
                           __m256d two_g) {
  const __m256d a = vabs(r);
  const __m256d quad = _mm256_div_pd(_mm256_mul_pd(r, r), two_g);
  const __m256d lin = _mm256_sub_pd(a, half_g);
  return _mm256_blendv_pd(lin, quad, _mm256_cmp_pd(a, g, _CMP_LE_OQ));
}

double huber_sum(std::span<const double> r, double gamma) {
  const double* p = r.data();
  const __m256d g = _mm256_set1_pd(gamma);
  const __m256d half_g = _mm256_set1_pd(0.5 * gamma);
  const __m256d two_g = _mm256_set1_pd(2.0 * gamma);
  return pairwise<double>(0, r.size(), [&](std::size_t b, std::size_t e) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = stride8(b, e, [&](std::size_t j) {
      s0 = _mm256_add_pd(s0, huber_lanes(_mm256_loadu_pd(p + j), g, half_g,
                                         two_g));
      s1 = _mm256_add_pd(s1, huber_lanes(_mm256_loadu_pd(p + j + 4), g,
                                         half_g, two_g));
    });
    double s = hsum(_mm256_add_pd(s0, s1));
    for (; i < e; ++i) {
      const double a = std::fabs(p[i]);
      s += a <= gamma ? p[i] * p[i] / (2.0 * gamma) : a - 0.5 * gamma;
    }
    return s;
  });
}

void huber_bracket(std::span<const double> r, double gamma,
                   std::span<double> out) {
  const std::size_t n = r.size();
  const __m256d g = _mm256_set1_pd(gamma);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d minus_one = _mm256_set1_pd(-1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(r.data() + i), g);
    _mm256_storeu_pd(out.data() + i,
                     _mm256_min_pd(_mm256_max_pd(q, minus_one), one));
  }
  for (; i < n; ++i) {
    const double q = r[i] / gamma;
    out[i] = q > 1.0 ? 1.0 : (q < -1.0 ? -1.0 : q);
  }
}

void huber_band(std::span<const double> r, double gamma, std::span<double> w) {
  const std::size_t n = r.size();
  const __m256d g = _mm256_set1_pd(gamma);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = vabs(_mm256_loadu_pd(r.data() + i));
    _mm256_storeu_pd(w.data() + i,
                     _mm256_and_pd(_mm256_cmp_pd(a, g, _CMP_LE_OQ), one));
  }
  for (; i < n; ++i) w[i] = std::fabs(r[i]) <= gamma ? 1.0 : 0.0;
}

void irls_weights(std::span<const double> r, double e, std::span<double> w) {
  const std::size_t n = r.size();
  const __m256d ve = _mm256_set1_pd(e);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = vabs(_mm256_loadu_pd(r.data() + i));
    _mm256_storeu_pd(w.data() + i, _mm256_div_pd(one, _mm256_add_pd(a, ve)));
  }
  for (; i < n; ++i) w[i] = 1.0 / (std::fabs(r[i]) + e);
}

SignKinkSums sign_kink_sums(std::span<const double> r,
                            std::span<const double> x) {
  const double* pr = r.data();
  const double* px = x.data();
  const __m256d zero = _mm256_setzero_pd();
  return pairwise<SignKinkSums>(
      0, r.size(), [&](std::size_t b, std::size_t e) {
        __m256d sg = _mm256_setzero_pd(), kk = _mm256_setzero_pd();
        std::size_t i = b;
        for (; i + 4 <= e; i += 4) {
          const __m256d vr = _mm256_loadu_pd(pr + i);
          const __m256d vx = _mm256_loadu_pd(px + i);
          const __m256d pos = _mm256_cmp_pd(vr, zero, _CMP_GT_OQ);
          const __m256d neg = _mm256_cmp_pd(vr, zero, _CMP_LT_OQ);
          const __m256d eq = _mm256_cmp_pd(vr, zero, _CMP_EQ_OQ);
          sg = _mm256_add_pd(sg, _mm256_sub_pd(_mm256_and_pd(pos, vx),
                                               _mm256_and_pd(neg, vx)));
          kk = _mm256_add_pd(kk, _mm256_and_pd(eq, vabs(vx)));
        }
        SignKinkSums s{hsum(sg), hsum(kk)};
        for (; i < e; ++i) {
          if (pr[i] > 0.0) {
            s.signed_sum += px[i];
          } else if (pr[i] < 0.0) {
            s.signed_sum -= px[i];
          } else {
            s.kink_sum += std::fabs(px[i]);
          }
        }
        return s;
      });
}

}  // namespace

const KernelTable kAvx2Table = {
    Isa::kAvx2,   residuals,     sum,           dot,        wdot,
    abs_sum,      huber_sum,     huber_bracket, huber_band, irls_weights,
    sign_kink_sums,
};

}  // namespace dpmr::kernels
