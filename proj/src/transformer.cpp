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

#include "omniscore/encoder.hpp"
#include "omniscore/random.hpp"
#include "omniscore/simd/kernels.hpp"
#include "omniscore/utf8.hpp"

namespace omniscore::encoder {

// Parameter offsets. Matrices are row-major with shape [in x out] so that
// y = x W is a sequence of axpy calls over rows of W.
struct TinyTransformerEncoder::Layout {
  std::size_t d = 0, f = 0, heads = 0, ctx = 0, vocab = 0, layers = 0;
  std::size_t tok = 0, pool = 0, pos = 0;
  std::size_t first_layer = 0, layer_size = 0;
  std::size_t total = 0;

  // Within one layer.
  std::size_t wq() const { return 0; }
  std::size_t wk() const { return d * d; }
  std::size_t wv() const { return 2 * d * d; }
  std::size_t wo() const { return 3 * d * d; }
  std::size_t bq() const { return 4 * d * d; }
  std::size_t bk() const { return 4 * d * d + d; }
  std::size_t bv() const { return 4 * d * d + 2 * d; }
  std::size_t bo() const { return 4 * d * d + 3 * d; }
  std::size_t w1() const { return 4 * d * d + 4 * d; }
  std::size_t b1() const { return w1() + d * f; }
  std::size_t w2() const { return b1() + f; }
  std::size_t b2() const { return w2() + f * d; }
  std::size_t layer(std::size_t l) const { return first_layer + l * layer_size; }
};

TinyTransformerEncoder::Layout TinyTransformerEncoder::layout() const {
  Layout L;
  L.d = cfg_.embedding_dim;
  L.f = cfg_.ffn_dim;
  L.heads = cfg_.heads;
  L.ctx = cfg_.context_length;
  L.vocab = cfg_.vocab_size;
  L.layers = cfg_.layers;
  L.tok = 0;
  L.pool = L.vocab * L.d;
  L.pos = L.pool + L.d;
  L.first_layer = L.pos + L.ctx * L.d;
  L.layer_size = 4 * L.d * L.d + 4 * L.d + L.d * L.f + L.f + L.f * L.d + L.d;
  L.total = L.first_layer + L.layers * L.layer_size;
  return L;
}

std::size_t TinyTransformerEncoder::parameter_count(const EncoderConfig& cfg) {
  const std::size_t d = cfg.embedding_dim, f = cfg.ffn_dim;
  const std::size_t layer = 4 * d * d + 4 * d + d * f + f + f * d + d;
  return cfg.vocab_size * d + d + cfg.context_length * d + cfg.layers * layer;
}

TinyTransformerEncoder::TinyTransformerEncoder(EncoderConfig cfg)
    : Encoder(std::move(cfg)) {
  cfg_.validate();
  const Layout L = layout();
  params_.assign(L.total, 0.0);
  Rng rng(mix64(cfg_.seed));
  const double emb_std = 0.1 * cfg_.init_scale;
  for (std::size_t i = 0; i < L.first_layer; ++i) params_[i] = emb_std * rng.normal();
  auto fill = [&](std::size_t off, std::size_t rows, std::size_t cols) {
    const double s = cfg_.init_scale / std::sqrt(static_cast<double>(rows));
    for (std::size_t i = 0; i < rows * cols; ++i) params_[off + i] = s * rng.normal();
  };
  for (std::size_t l = 0; l < L.layers; ++l) {
    const std::size_t base = L.layer(l);
    fill(base + L.wq(), L.d, L.d);
    fill(base + L.wk(), L.d, L.d);
    fill(base + L.wv(), L.d, L.d);
    fill(base + L.wo(), L.d, L.d);
    fill(base + L.w1(), L.d, L.f);
    fill(base + L.w2(), L.f, L.d);
  }
}

TinyTransformerEncoder::TinyTransformerEncoder(EncoderConfig cfg,
                                               std::vector<double> params)
    : Encoder(std::move(cfg)) {
  cfg_.validate();
  if (params.size() != parameter_count(cfg_)) {
    throw ValidationError("transformer encoder: expected " +
                          std::to_string(parameter_count(cfg_)) +
                          " parameters, got " + std::to_string(params.size()));
  }
  params_ = std::move(params);
}

Features TinyTransformerEncoder::featurize(const EvaluationInstance& instance) const {
  const std::u32string cps =
      utf8::decode(serialize_input(instance, cfg_.char_budget));
  Features f;
  const std::size_t n = std::min(cps.size(), cfg_.context_length - 1);
  f.index.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.index.push_back(static_cast<std::uint32_t>(
        mix64(static_cast<std::uint64_t>(cps[i])) & (cfg_.vocab_size - 1)));
  }
  f.value.assign(n, 1.0);
  return f;
}

namespace {

// Y[t, :] += sum_i X[t, i] W[i, :]
void matmul_acc(const double* x, std::size_t rows, std::size_t in,
                const double* w, std::size_t out, double* y) {
  const auto& k = simd::kernels();
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t i = 0; i < in; ++i) {
      k.axpy(x[t * in + i], w + i * out, y + t * out, out);
    }
  }
}

// dX[t, i] += sum_j dY[t, j] W[i, j]
void matmul_bt_acc(const double* dy, std::size_t rows, std::size_t in,
                   const double* w, std::size_t out, double* dx) {
  const auto& k = simd::kernels();
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t i = 0; i < in; ++i) {
      dx[t * in + i] += k.dot(dy + t * out, w + i * out, out);
    }
  }
}

// dW[i, :] += sum_t X[t, i] dY[t, :]
void outer_acc(const double* x, std::size_t rows, std::size_t in,
               const double* dy, std::size_t out, double* dw) {
  const auto& k = simd::kernels();
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t i = 0; i < in; ++i) {
      k.axpy(x[t * in + i], dy + t * out, dw + i * out, out);
    }
  }
}

void add_bias(const double* b, std::size_t rows, std::size_t n, double* y) {
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t j = 0; j < n; ++j) y[t * n + j] += b[j];
  }
}

void bias_grad(const double* dy, std::size_t rows, std::size_t n, double* db) {
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t j = 0; j < n; ++j) db[j] += dy[t * n + j];
  }
}

// Offsets of one forward pass inside Activations::values.
struct ActLayout {
  std::size_t t, d, f, h;
  std::size_t td() const { return t * d; }
  std::size_t per_layer() const { return 5 * td() + h * t * t + t * f; }
  // X_l for l in [0, layers]; X_0 is the embedded input.
  std::size_t x(std::size_t l) const { return l * (td() + per_layer()); }
  std::size_t q(std::size_t l) const { return x(l) + td(); }
  std::size_t k(std::size_t l) const { return q(l) + td(); }
  std::size_t v(std::size_t l) const { return k(l) + td(); }
  std::size_t c(std::size_t l) const { return v(l) + td(); }
  std::size_t a(std::size_t l) const { return c(l) + td(); }
  std::size_t p(std::size_t l) const { return a(l) + td(); }
  std::size_t u(std::size_t l) const { return p(l) + h * t * t; }
  std::size_t total(std::size_t layers) const { return x(layers) + td(); }
};

}  // namespace

void TinyTransformerEncoder::forward(const Features& feats, Activations& act,
                                     std::span<double> out) const {
  const Layout L = layout();
  const std::size_t T = feats.index.size() + 1;
  const ActLayout A{T, L.d, L.f, L.heads};
  act.values.assign(A.total(L.layers), 0.0);
  double* v = act.values.data();
  const double* P = params_.data();
  const std::size_t d = L.d, dh = d / L.heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const auto& kern = simd::kernels();

  double* x0 = v + A.x(0);
  for (std::size_t t = 0; t < T; ++t) {
    const double* e = t == 0 ? P + L.pool : P + L.tok + std::size_t{feats.index[t - 1]} * d;
    const double* pe = P + L.pos + t * d;
    for (std::size_t j = 0; j < d; ++j) x0[t * d + j] = e[j] + pe[j];
  }

  std::vector<double> row(T);
  for (std::size_t l = 0; l < L.layers; ++l) {
    const double* W = P + L.layer(l);
    const double* x = v + A.x(l);
    double* q = v + A.q(l);
    double* k = v + A.k(l);
    double* vv = v + A.v(l);
    double* c = v + A.c(l);
    double* a = v + A.a(l);
    double* p = v + A.p(l);
    double* u = v + A.u(l);
    double* y = v + A.x(l + 1);

    matmul_acc(x, T, d, W + L.wq(), d, q);
    add_bias(W + L.bq(), T, d, q);
    matmul_acc(x, T, d, W + L.wk(), d, k);
    add_bias(W + L.bk(), T, d, k);
    matmul_acc(x, T, d, W + L.wv(), d, vv);
    add_bias(W + L.bv(), T, d, vv);

    for (std::size_t h = 0; h < L.heads; ++h) {
      double* ph = p + h * T * T;
      for (std::size_t i = 0; i < T; ++i) {
        double mx = -INFINITY;
        for (std::size_t j = 0; j < T; ++j) {
          row[j] = scale * kern.dot(q + i * d + h * dh, k + j * d + h * dh, dh);
          mx = std::max(mx, row[j]);
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < T; ++j) {
          row[j] = std::exp(row[j] - mx);
          sum += row[j];
        }
        for (std::size_t j = 0; j < T; ++j) {
          ph[i * T + j] = row[j] / sum;
          kern.axpy(ph[i * T + j], vv + j * d + h * dh, c + i * d + h * dh, dh);
        }
      }
    }

    for (std::size_t i = 0; i < T * d; ++i) a[i] = x[i];
    matmul_acc(c, T, d, W + L.wo(), d, a);
    add_bias(W + L.bo(), T, d, a);

    matmul_acc(a, T, d, W + L.w1(), L.f, u);
    add_bias(W + L.b1(), T, L.f, u);
    for (std::size_t i = 0; i < T * L.f; ++i) u[i] = std::tanh(u[i]);

    for (std::size_t i = 0; i < T * d; ++i) y[i] = a[i];
    matmul_acc(u, T, L.f, W + L.w2(), d, y);
    add_bias(W + L.b2(), T, d, y);
  }

  const double* last = v + A.x(L.layers);
  std::copy(last, last + d, out.begin());
}

void TinyTransformerEncoder::backward(const Features& feats,
                                      const Activations& act,
                                      std::span<const double> d_out,
                                      std::span<double> grad) const {
  const Layout L = layout();
  const std::size_t T = feats.index.size() + 1;
  const ActLayout A{T, L.d, L.f, L.heads};
  const double* v = act.values.data();
  const double* P = params_.data();
  double* G = grad.data();
  const std::size_t d = L.d, dh = d / L.heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const auto& kern = simd::kernels();

  // Gradient w.r.t. the current layer output; only the pooling row is fed.
  std::vector<double> dy(T * d, 0.0);
  std::copy(d_out.begin(), d_out.end(), dy.begin());
  std::vector<double> da(T * d), du(T * L.f), dc(T * d), dq(T * d), dk(T * d),
      dv(T * d), dx(T * d), dp(T);

  for (std::size_t l = L.layers; l-- > 0;) {
    const double* W = P + L.layer(l);
    double* GW = G + L.layer(l);
    const double* x = v + A.x(l);
    const double* q = v + A.q(l);
    const double* k = v + A.k(l);
    const double* vv = v + A.v(l);
    const double* c = v + A.c(l);
    const double* a = v + A.a(l);
    const double* p = v + A.p(l);
    const double* u = v + A.u(l);

    // y = a + tanh(a W1 + b1) W2 + b2
    da = dy;
    std::fill(du.begin(), du.end(), 0.0);
    matmul_bt_acc(dy.data(), T, L.f, W + L.w2(), d, du.data());
    outer_acc(u, T, L.f, dy.data(), d, GW + L.w2());
    bias_grad(dy.data(), T, d, GW + L.b2());
    for (std::size_t i = 0; i < T * L.f; ++i) du[i] *= 1.0 - u[i] * u[i];
    outer_acc(a, T, d, du.data(), L.f, GW + L.w1());
    bias_grad(du.data(), T, L.f, GW + L.b1());
    matmul_bt_acc(du.data(), T, d, W + L.w1(), L.f, da.data());

    // a = x + c Wo + bo
    dx = da;
    std::fill(dc.begin(), dc.end(), 0.0);
    matmul_bt_acc(da.data(), T, d, W + L.wo(), d, dc.data());
    outer_acc(c, T, d, da.data(), d, GW + L.wo());
    bias_grad(da.data(), T, d, GW + L.bo());

    std::fill(dq.begin(), dq.end(), 0.0);
    std::fill(dk.begin(), dk.end(), 0.0);
    std::fill(dv.begin(), dv.end(), 0.0);
    for (std::size_t h = 0; h < L.heads; ++h) {
      const double* ph = p + h * T * T;
      for (std::size_t i = 0; i < T; ++i) {
        const double* dci = dc.data() + i * d + h * dh;
        double s = 0.0;
        for (std::size_t j = 0; j < T; ++j) {
          dp[j] = kern.dot(dci, vv + j * d + h * dh, dh);
          s += dp[j] * ph[i * T + j];
          kern.axpy(ph[i * T + j], dci, dv.data() + j * d + h * dh, dh);
        }
        for (std::size_t j = 0; j < T; ++j) {
          const double ds = scale * ph[i * T + j] * (dp[j] - s);
          kern.axpy(ds, k + j * d + h * dh, dq.data() + i * d + h * dh, dh);
          kern.axpy(ds, q + i * d + h * dh, dk.data() + j * d + h * dh, dh);
        }
      }
    }

    outer_acc(x, T, d, dq.data(), d, GW + L.wq());
    bias_grad(dq.data(), T, d, GW + L.bq());
    matmul_bt_acc(dq.data(), T, d, W + L.wq(), d, dx.data());
    outer_acc(x, T, d, dk.data(), d, GW + L.wk());
    bias_grad(dk.data(), T, d, GW + L.bk());
    matmul_bt_acc(dk.data(), T, d, W + L.wk(), d, dx.data());
    outer_acc(x, T, d, dv.data(), d, GW + L.wv());
    bias_grad(dv.data(), T, d, GW + L.bv());
    matmul_bt_acc(dv.data(), T, d, W + L.wv(), d, dx.data());

    dy = dx;
  }

  for (std::size_t t = 0; t < T; ++t) {
    double* ge = t == 0 ? G + L.pool : G + L.tok + std::size_t{feats.index[t - 1]} * d;
    double* gp = G + L.pos + t * d;
    for (std::size_t j = 0; j < d; ++j) {
      ge[j] += dy[t * d + j];
      gp[j] += dy[t * d + j];
    }
  }
}

std::vector<std::size_t> TinyTransformerEncoder::touched_parameters(
    const Features& feats) const {
  const Layout L = layout();
  std::vector<bool> used(L.vocab, false);
  for (std::uint32_t id : feats.index) used[id] = true;
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < L.vocab; ++id) {
    if (!used[id]) continue;
    for (std::size_t j = 0; j < L.d; ++j) out.push_back(L.tok + id * L.d + j);
  }
  for (std::size_t i = L.pool; i < L.pos; ++i) out.push_back(i);
  const std::size_t T = feats.index.size() + 1;
  for (std::size_t i = L.pos; i < L.pos + T * L.d; ++i) out.push_back(i);
  for (std::size_t i = L.first_layer; i < L.total; ++i) out.push_back(i);
  return out;
}

}  // namespace omniscore::encoder
