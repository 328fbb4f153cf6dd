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

#pragma once

#include <cstddef>

#include "omniscore/simd/kernels.hpp"

namespace omniscore::simd {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void adamw_step(double* p, const double* g, double* m, double* v,
                std::size_t n, const AdamWStep& s);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define OMNISCORE_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void adamw_step(double* p, const double* g, double* m, double* v,
                std::size_t n, const AdamWStep& s);
}  // namespace avx2
#endif

}  // namespace omniscore::simd
