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

// Encoders map an instance to a fixed-size sequence representation that the
// four regression heads read. The encoder sees the input fields and the
// candidate but never the task label:
//
//   "<field>: <value> ¶ <field>: <value> ¶ ... ¶ candidate: <text>"
//
// with fields in key order and every value truncated to a code point budget.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "omniscore/corpus.hpp"
#include "omniscore/types.hpp"

namespace omniscore::encoder {

enum class EncoderKind { kHashedNgram, kTinyTransformer };

std::string_view to_string(EncoderKind kind);
std::optional<EncoderKind> parse_encoder_kind(std::string_view text);

struct EncoderConfig {
  EncoderKind kind = EncoderKind::kHashedNgram;
  std::size_t embedding_dim = 256;
  std::uint64_t seed = 1;
  std::size_t char_budget = 8192;
  // Standard deviation of the initial projection / embedding weights.
  double init_scale = 1.0;

  // Hashed n-gram encoder.
  std::vector<int> ngram_sizes = {2, 3, 4};
  std::size_t hash_buckets = std::size_t{1} << 14;

  // Tiny transformer encoder.
  std::size_t layers = 1;
  std::size_t heads = 4;
  std::size_t context_length = 128;
  std::size_t vocab_size = 4096;  // hashed code point vocabulary
  std::size_t ffn_dim = 64;

  // Throws a validation Error describing the first bad field.
  void validate() const;

  friend bool operator==(const EncoderConfig&, const EncoderConfig&) = default;
};

Json to_json(const EncoderConfig& cfg);
EncoderConfig encoder_config_from_json(const Json& j);

std::string serialize_input(const EvaluationInstance& instance,
                            std::size_t char_budget);

// Encoder-specific preprocessed input. Sparse n-gram encoders use
// (index, value) pairs; token encoders use the indices as token ids.
struct Features {
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  friend bool operator==(const Features&, const Features&) = default;
};

// Whatever forward() must hand to backward().
struct Activations {
  std::vector<double> values;
};

class Encoder {
 public:
  explicit Encoder(EncoderConfig cfg) : cfg_(std::move(cfg)) {}
  virtual ~Encoder() = default;

  const EncoderConfig& config() const { return cfg_; }
  std::size_t dim() const { return cfg_.embedding_dim; }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  virtual Features featurize(const EvaluationInstance& instance) const = 0;
  virtual void forward(const Features& features, Activations& act,
                       std::span<double> out) const = 0;
  // Accumulates d(loss)/d(params) into `grad` given d(loss)/d(out).
  virtual void backward(const Features& features, const Activations& act,
                        std::span<const double> d_out,
                        std::span<double> grad) const = 0;
  // Parameter indices that can receive gradient for these features.
  virtual std::vector<std::size_t> touched_parameters(
      const Features& features) const = 0;

 protected:
  EncoderConfig cfg_;
  std::vector<double> params_;
};

// Freshly initialized from cfg.seed.
std::unique_ptr<Encoder> make_encoder(const EncoderConfig& cfg);
// With explicit parameters (e.g. from a checkpoint); sizes must match.
std::unique_ptr<Encoder> make_encoder(const EncoderConfig& cfg,
                                      std::vector<double> params);
std::size_t parameter_count(const EncoderConfig& cfg);

std::vector<double> encode(const Encoder& encoder,
                           const EvaluationInstance& instance);

// Signed hashed character n-gram counts, L2-normalized, projected by one
// affine layer and squashed by tanh.
class HashedNgramEncoder : public Encoder {
 public:
  explicit HashedNgramEncoder(EncoderConfig cfg);
  HashedNgramEncoder(EncoderConfig cfg, std::vector<double> params);

  static std::size_t parameter_count(const EncoderConfig& cfg);

  Features featurize(const EvaluationInstance& instance) const override;
  Features featurize_text(std::string_view text) const;
  void forward(const Features& features, Activations& act,
               std::span<double> out) const override;
  void backward(const Features& features, const Activations& act,
                std::span<const double> d_out,
                std::span<double> grad) const override;
  std::vector<std::size_t> touched_parameters(
      const Features& features) const override;
};

// Character-level encoder: hashed code point tokens plus a leading pooling
// token, learned positions, unnormalized residual blocks of multi-head
// softmax attention and a tanh feed-forward layer. The output is the final
// hidden state at the pooling position.
class TinyTransformerEncoder : public Encoder {
 public:
  explicit TinyTransformerEncoder(EncoderConfig cfg);
  TinyTransformerEncoder(EncoderConfig cfg, std::vector<double> params);

  static std::size_t parameter_count(const EncoderConfig& cfg);

  Features featurize(const EvaluationInstance& instance) const override;
  void forward(const Features& features, Activations& act,
               std::span<double> out) const override;
  void backward(const Features& features, const Activations& act,
                std::span<const double> d_out,
                std::span<double> grad) const override;
  std::vector<std::size_t> touched_parameters(
      const Features& features) const override;

 private:
  struct Layout;
  Layout layout() const;
};

}  // namespace omniscore::encoder
