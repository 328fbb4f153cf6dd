// Copyright 2026 The OmniScore Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 (and without -mfma) only for this translation unit.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace omniscore::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4),
                                             _mm256_loadu_pd(b + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void adamw_step(double* p, const double* g, double* m, double* v,
                std::size_t n, const AdamWStep& s) {
  const double decay = 1.0 - s.lr * s.weight_decay;
  const double one_minus_b1 = 1.0 - s.beta1;
  const double one_minus_b2 = 1.0 - s.beta2;
  const double step_size = s.lr / s.bias_correction1;
  const double bc2_sqrt = std::sqrt(s.bias_correction2);

  const __m256d vdecay = _mm256_set1_pd(decay);
  const __m256d vb1 = _mm256_set1_pd(s.beta1);
  const __m256d vb2 = _mm256_set1_pd(s.beta2);
  const __m256d v1mb1 = _mm256_set1_pd(one_minus_b1);
  const __m256d v1mb2 = _mm256_set1_pd(one_minus_b2);
  const __m256d vstep = _mm256_set1_pd(step_size);
  const __m256d vbc2 = _mm256_set1_pd(bc2_sqrt);
  const __m256d veps = _mm256_set1_pd(s.eps);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d gi = _mm256_loadu_pd(g + i);
    const __m256d mi = _mm256_add_pd(_mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)),
                                     _mm256_mul_pd(v1mb1, gi));
    const __m256d vi = _mm256_add_pd(
        _mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)),
        _mm256_mul_pd(v1mb2, _mm256_mul_pd(gi, gi)));
    _mm256_storeu_pd(m + i, mi);
    _mm256_storeu_pd(v + i, vi);
    const __m256d denom =
        _mm256_add_pd(_mm256_div_pd(_mm256_sqrt_pd(vi), vbc2), veps);
    const __m256d pi = _mm256_sub_pd(
        _mm256_mul_pd(_mm256_loadu_pd(p + i), vdecay),
        _mm256_mul_pd(vstep, _mm256_div_pd(mi, denom)));
    _mm256_storeu_pd(p + i, pi);
  }
  for (; i < n; ++i) {
    const double gs = g[i];
    const double ms = s.beta1 * m[i] + one_minus_b1 * gs;
    const double vs = s.beta2 * v[i] + one_minus_b2 * (gs * gs);
    m[i] = ms;
    v[i] = vs;
    const double denom = std::sqrt(vs) / bc2_sqrt + s.eps;
    p[i] = p[i] * decay - step_size * (ms / denom);
  }
}

}  // namespace omniscore::simd::avx2
