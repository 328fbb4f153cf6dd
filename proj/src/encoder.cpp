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

#include "omniscore/encoder.hpp"

#include <algorithm>
#include <cmath>

#include "omniscore/random.hpp"
#include "omniscore/simd/kernels.hpp"
#include "omniscore/utf8.hpp"

namespace omniscore::encoder {

namespace {

constexpr std::string_view kFieldSeparator = " \xC2\xB6 ";  // " ¶ "

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::uint64_t fnv1a(std::u32string_view cps, std::uint64_t basis) {
  std::uint64_t h = 0xCBF29CE484222325ULL ^ basis;
  std::string bytes;
  for (char32_t cp : cps) utf8::append(bytes, cp);
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::kHashedNgram: return "hashed_ngram";
    case EncoderKind::kTinyTransformer: return "tiny_transformer";
  }
  return "?";
}

std::optional<EncoderKind> parse_encoder_kind(std::string_view text) {
  if (text == "hashed_ngram") return EncoderKind::kHashedNgram;
  if (text == "tiny_transformer") return EncoderKind::kTinyTransformer;
  return std::nullopt;
}

void EncoderConfig::validate() const {
  if (embedding_dim == 0) throw ValidationError("encoder: embedding_dim must be > 0");
  if (char_budget == 0) throw ValidationError("encoder: char_budget must be > 0");
  if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
    throw ValidationError("encoder: init_scale must be positive");
  }
  if (kind == EncoderKind::kHashedNgram) {
    if (!is_power_of_two(hash_buckets) || hash_buckets > (std::size_t{1} << 30)) {
      throw ValidationError("encoder: hash_buckets must be a power of two <= 2^30");
    }
    if (ngram_sizes.empty()) throw ValidationError("encoder: no n-gram sizes");
    for (int n : ngram_sizes) {
      if (n < 1 || n > 16) throw ValidationError("encoder: n-gram size outside 1..16");
    }
  } else {
    if (layers == 0) throw ValidationError("encoder: layers must be > 0");
    if (heads == 0 || embedding_dim % heads != 0) {
      throw ValidationError("encoder: heads must divide embedding_dim");
    }
    if (context_length < 2) throw ValidationError("encoder: context_length must be >= 2");
    if (!is_power_of_two(vocab_size) || vocab_size < 2) {
      throw ValidationError("encoder: vocab_size must be a power of two >= 2");
    }
    if (ffn_dim == 0) throw ValidationError("encoder: ffn_dim must be > 0");
  }
}

Json to_json(const EncoderConfig& c) {
  Json j;
  j["kind"] = std::string(to_string(c.kind));
  j["embedding_dim"] = c.embedding_dim;
  j["seed"] = c.seed;
  j["char_budget"] = c.char_budget;
  j["init_scale"] = c.init_scale;
  j["ngram_sizes"] = c.ngram_sizes;
  j["hash_buckets"] = c.hash_buckets;
  j["layers"] = c.layers;
  j["heads"] = c.heads;
  j["context_length"] = c.context_length;
  j["vocab_size"] = c.vocab_size;
  j["ffn_dim"] = c.ffn_dim;
  return j;
}

EncoderConfig encoder_config_from_json(const Json& j) {
  EncoderConfig c;
  const auto kind = parse_encoder_kind(j.at("kind").get<std::string>());
  if (!kind) throw ValidationError("unknown encoder kind");
  c.kind = *kind;
  c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.char_budget = j.at("char_budget").get<std::size_t>();
  c.init_scale = j.at("init_scale").get<double>();
  c.ngram_sizes = j.at("ngram_sizes").get<std::vector<int>>();
  c.hash_buckets = j.at("hash_buckets").get<std::size_t>();
  c.layers = j.at("layers").get<std::size_t>();
  c.heads = j.at("heads").get<std::size_t>();
  c.context_length = j.at("context_length").get<std::size_t>();
  c.vocab_size = j.at("vocab_size").get<std::size_t>();
  c.ffn_dim = j.at("ffn_dim").get<std::size_t>();
  c.validate();
  return c;
}

std::string serialize_input(const EvaluationInstance& instance,
                            std::size_t char_budget) {
  std::string out;
  for (const auto& [name, value] : instance.inputs) {
    out += name;
    out += ": ";
    out += utf8::truncate(value, char_budget);
    out += kFieldSeparator;
  }
  out += "candidate: ";
  out += utf8::truncate(instance.candidate, char_budget);
  return out;
}

std::size_t parameter_count(const EncoderConfig& cfg) {
  return cfg.kind == EncoderKind::kHashedNgram
             ? HashedNgramEncoder::parameter_count(cfg)
             : TinyTransformerEncoder::parameter_count(cfg);
}

std::unique_ptr<Encoder> make_encoder(const EncoderConfig& cfg) {
  cfg.validate();
  if (cfg.kind == EncoderKind::kHashedNgram) {
    return std::make_unique<HashedNgramEncoder>(cfg);
  }
  return std::make_unique<TinyTransformerEncoder>(cfg);
}

std::unique_ptr<Encoder> make_encoder(const EncoderConfig& cfg,
                                      std::vector<double> params) {
  cfg.validate();
  if (cfg.kind == EncoderKind::kHashedNgram) {
    return std::make_unique<HashedNgramEncoder>(cfg, std::move(params));
  }
  return std::make_unique<TinyTransformerEncoder>(cfg, std::move(params));
}

std::vector<double> encode(const Encoder& encoder,
                           const EvaluationInstance& instance) {
  std::vector<double> out(encoder.dim());
  Activations act;
  encoder.forward(encoder.featurize(instance), act, out);
  return out;
}

// ---------------------------------------------------------------------------
// Hashed n-gram encoder. Parameter layout: projection W row-major with one
// embedding_dim row per bucket, then the bias vector.

std::size_t HashedNgramEncoder::parameter_count(const EncoderConfig& cfg) {
  return cfg.hash_buckets * cfg.embedding_dim + cfg.embedding_dim;
}

HashedNgramEncoder::HashedNgramEncoder(EncoderConfig cfg)
    : Encoder(std::move(cfg)) {
  cfg_.validate();
  params_.assign(parameter_count(cfg_), 0.0);
  Rng rng(mix64(cfg_.seed));
  const std::size_t weights = cfg_.hash_buckets * cfg_.embedding_dim;
  for (std::size_t i = 0; i < weights; ++i) {
    params_[i] = cfg_.init_scale * rng.normal();
  }
}

HashedNgramEncoder::HashedNgramEncoder(EncoderConfig cfg,
                                       std::vector<double> params)
    : Encoder(std::move(cfg)) {
  cfg_.validate();
  if (params.size() != parameter_count(cfg_)) {
    throw ValidationError("hashed encoder: expected " +
                          std::to_string(parameter_count(cfg_)) +
                          " parameters, got " + std::to_string(params.size()));
  }
  params_ = std::move(params);
}

Features HashedNgramEncoder::featurize_text(std::string_view text) const {
  const std::u32string cps = utf8::decode(text);
  const std::uint64_t mask = cfg_.hash_buckets - 1;
  std::vector<std::pair<std::uint32_t, double>> hits;
  for (int n : cfg_.ngram_sizes) {
    const auto len = static_cast<std::size_t>(n);
    if (cps.size() < len) continue;
    for (std::size_t i = 0; i + len <= cps.size(); ++i) {
      const std::uint64_t h =
          mix64(fnv1a(std::u32string_view(cps).substr(i, len),
                      static_cast<std::uint64_t>(n)));
      const double sign = (h >> 63) ? -1.0 : 1.0;
      hits.emplace_back(static_cast<std::uint32_t>(h & mask), sign);
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Features f;
  for (std::size_t i = 0; i < hits.size();) {
    const std::uint32_t bucket = hits[i].first;
    double sum = 0.0;
    for (; i < hits.size() && hits[i].first == bucket; ++i) sum += hits[i].second;
    if (sum != 0.0) {
      f.index.push_back(bucket);
      f.value.push_back(sum);
    }
  }
  double norm_sq = 0.0;
  for (double v : f.value) norm_sq += v * v;
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : f.value) v *= inv;
  }
  return f;
}

Features HashedNgramEncoder::featurize(const EvaluationInstance& instance) const {
  return featurize_text(serialize_input(instance, cfg_.char_budget));
}

void HashedNgramEncoder::forward(const Features& f, Activations& act,
                                 std::span<double> out) const {
  const std::size_t dim = cfg_.embedding_dim;
  const double* bias = params_.data() + cfg_.hash_buckets * dim;
  std::copy(bias, bias + dim, out.begin());
  const auto& k = simd::kernels();
  for (std::size_t j = 0; j < f.index.size(); ++j) {
    k.axpy(f.value[j], params_.data() + std::size_t{f.index[j]} * dim,
           out.data(), dim);
  }
  for (double& v : out) v = std::tanh(v);
  act.values.assign(out.begin(), out.end());
}

void HashedNgramEncoder::backward(const Features& f, const Activations& act,
                                  std::span<const double> d_out,
                                  std::span<double> grad) const {
  const std::size_t dim = cfg_.embedding_dim;
  std::vector<double> d_pre(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double h = act.values[i];
    d_pre[i] = d_out[i] * (1.0 - h * h);
  }
  const auto& k = simd::kernels();
  k.axpy(1.0, d_pre.data(), grad.data() + cfg_.hash_buckets * dim, dim);
  for (std::size_t j = 0; j < f.index.size(); ++j) {
    k.axpy(f.value[j], d_pre.data(),
           grad.data() + std::size_t{f.index[j]} * dim, dim);
  }
}

std::vector<std::size_t> HashedNgramEncoder::touched_parameters(
    const Features& f) const {
  const std::size_t dim = cfg_.embedding_dim;
  std::vector<std::size_t> out;
  out.reserve((f.index.size() + 1) * dim);
  for (std::uint32_t b : f.index) {
    for (std::size_t i = 0; i < dim; ++i) out.push_back(std::size_t{b} * dim + i);
  }
  for (std::size_t i = 0; i < dim; ++i) out.push_back(cfg_.hash_buckets * dim + i);
  return out;
}

}  // namespace omniscore::encoder
