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

// Dense inner loops of the regressor. Each kernel has a scalar reference
// implementation and, on x86-64, an AVX2 variant chosen at runtime.
//
// Elementwise kernels (axpy, adamw_step) produce bit-identical results on
// every backend: no FMA contraction and the same operation order per lane.
// Reductions (dot) differ only by summation order.
//
// The backend can be forced with OMNISCORE_SIMD=scalar|avx2.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace omniscore::simd {

enum class Backend { kScalar, kAvx2 };

std::string_view to_string(Backend backend);

struct AdamWStep {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;
  // 1 - beta^t for the current step t >= 1.
  double bias_correction1 = 1.0;
  double bias_correction2 = 1.0;
};

struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // Decoupled weight decay, then the bias-corrected Adam update:
  //   p *= 1 - lr*wd;  m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g*g
  //   p -= (lr / bc1) * m / (sqrt(v) / sqrt(bc2) + eps)
  void (*adamw_step)(double* param, const double* grad, double* m, double* v,
                     std::size_t n, const AdamWStep& step);
};

bool backend_available(Backend backend);
const KernelTable& kernels_for(Backend backend);

// Active table: the override from set_backend(), else OMNISCORE_SIMD, else
// the best available backend.
const KernelTable& kernels();
void set_backend(Backend backend);
Backend active_backend();

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void adamw_step(std::span<double> param, std::span<const double> grad,
                       std::span<double> m, std::span<double> v,
                       const AdamWStep& step) {
  kernels().adamw_step(param.data(), grad.data(), m.data(), v.data(),
                       param.size(), step);
}

}  // namespace omniscore::simd
