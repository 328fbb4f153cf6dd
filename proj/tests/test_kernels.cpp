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

#include <cstring>

#include "doctest.h"
#include "omniscore/random.hpp"
#include "omniscore/simd/kernels.hpp"

using namespace omniscore;
using namespace omniscore::simd;

namespace {

std::vector<double> randvec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal() * 3.0;
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels match hand computations") {
  const auto& k = kernels_for(Backend::kScalar);
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  CHECK(k.dot(a.data(), b.data(), 3) == 32.0);
  std::vector<double> y{1, 1, 1};
  k.axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});

  // One AdamW step from zero moments moves each parameter by about lr.
  std::vector<double> p{1.0, -1.0}, g{0.5, -2.0}, m(2, 0.0), v(2, 0.0);
  const AdamWStep st{.lr = 0.1, .weight_decay = 0.0, .bias_correction1 = 0.1,
                     .bias_correction2 = 1.0 - 0.999};
  k.adamw_step(p.data(), g.data(), m.data(), v.data(), 2, st);
  CHECK(p[0] == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(p[1] == doctest::Approx(-0.9).epsilon(1e-6));
  CHECK(m[0] == doctest::Approx(0.05));
  CHECK(v[1] == doctest::Approx(0.004));

  // Pure decay with zero gradient.
  std::vector<double> q{2.0}, zg{0.0}, zm{0.0}, zv{0.0};
  k.adamw_step(q.data(), zg.data(), zm.data(), zv.data(), 1,
               {.lr = 0.1, .weight_decay = 0.5, .bias_correction1 = 0.1,
                .bias_correction2 = 0.001});
  CHECK(q[0] == 2.0 * (1.0 - 0.05));
}

TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
  if (!backend_available(Backend::kAvx2)) {
    MESSAGE("AVX2 not available on this machine; equivalence not exercised");
    return;
  }
  const auto& s = kernels_for(Backend::kScalar);
  const auto& x = kernels_for(Backend::kAvx2);
  CHECK(x.backend == Backend::kAvx2);
  Rng rng(5);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 255u, 1000u, 4099u}) {
    CAPTURE(n);
    const auto a = randvec(rng, n), b = randvec(rng, n);
    const double ds = s.dot(a.data(), b.data(), n);
    const double dx = x.dot(a.data(), b.data(), n);
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
    CHECK(std::abs(ds - dx) <= 1e-12 * std::max(1.0, scale));

    auto ys = randvec(rng, n);
    auto yx = ys;
    s.axpy(-0.37, a.data(), ys.data(), n);
    x.axpy(-0.37, a.data(), yx.data(), n);
    CHECK(bit_equal(ys, yx));

    auto ps = randvec(rng, n), gs = randvec(rng, n), ms = randvec(rng, n);
    std::vector<double> vs(n);
    for (auto& v : vs) v = std::abs(rng.normal());
    auto px = ps, mx = ms, vx = vs;
    const AdamWStep st{.lr = 1e-3, .weight_decay = 0.01, .bias_correction1 = 0.271,
                       .bias_correction2 = 0.00299};
    for (int rep = 0; rep < 3; ++rep) {
      s.adamw_step(ps.data(), gs.data(), ms.data(), vs.data(), n, st);
      x.adamw_step(px.data(), gs.data(), mx.data(), vx.data(), n, st);
    }
    CHECK(bit_equal(ps, px));
    CHECK(bit_equal(ms, mx));
    CHECK(bit_equal(vs, vx));
  }
}

TEST_CASE("backend override takes effect") {
  const Backend before = active_backend();
  set_backend(Backend::kScalar);
  CHECK(active_backend() == Backend::kScalar);
  CHECK(kernels().backend == Backend::kScalar);
  set_backend(before);
  CHECK(to_string(Backend::kScalar) == "scalar");
  CHECK(to_string(Backend::kAvx2) == "avx2");
}
