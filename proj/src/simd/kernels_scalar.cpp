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

#include <cmath>

#include "kernels_impl.hpp"

namespace omniscore::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void adamw_step(double* p, const double* g, double* m, double* v,
                std::size_t n, const AdamWStep& s) {
  const double decay = 1.0 - s.lr * s.weight_decay;
  const double one_minus_b1 = 1.0 - s.beta1;
  const double one_minus_b2 = 1.0 - s.beta2;
  const double step_size = s.lr / s.bias_correction1;
  const double bc2_sqrt = std::sqrt(s.bias_correction2);
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = g[i];
    const double mi = s.beta1 * m[i] + one_minus_b1 * gi;
    const double vi = s.beta2 * v[i] + one_minus_b2 * (gi * gi);
    m[i] = mi;
    v[i] = vi;
    const double denom = std::sqrt(vi) / bc2_sqrt + s.eps;
    p[i] = p[i] * decay - step_size * (mi / denom);
  }
}

}  // namespace omniscore::simd::scalar
