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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace omniscore::simd {

namespace {

constexpr KernelTable kScalarTable{Backend::kScalar, &scalar::dot,
                                   &scalar::axpy, &scalar::adamw_step};
#ifdef OMNISCORE_HAVE_AVX2_KERNELS
constexpr KernelTable kAvx2Table{Backend::kAvx2, &avx2::dot, &avx2::axpy,
                                 &avx2::adamw_step};
#endif

const KernelTable* select_default() {
  if (const char* env = std::getenv("OMNISCORE_SIMD")) {
    const std::string choice = env;
    if (choice == "scalar") return &kScalarTable;
    if (choice == "avx2" && backend_available(Backend::kAvx2)) {
      return &kernels_for(Backend::kAvx2);
    }
  }
  if (backend_available(Backend::kAvx2)) return &kernels_for(Backend::kAvx2);
  return &kScalarTable;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{select_default()};
  return slot;
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#ifdef OMNISCORE_HAVE_AVX2_KERNELS
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_available(backend)) {
    throw std::runtime_error("SIMD backend not available: " +
                             std::string(to_string(backend)));
  }
#ifdef OMNISCORE_HAVE_AVX2_KERNELS
  if (backend == Backend::kAvx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& kernels() { return *active_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) { active_slot().store(&kernels_for(backend)); }

Backend active_backend() { return kernels().backend; }

}  // namespace omniscore::simd
