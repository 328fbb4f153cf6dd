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

// Four-head Likert regressor on top of an encoder: rescaled heads, MSE
// training with AdamW and per-group learning rates, dev-MAE checkpoint
// selection, and scoring.

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "omniscore/encoder.hpp"
#include "omniscore/types.hpp"

namespace omniscore::regressor {

// S(x) = 1 + 4 sigmoid(x), kept strictly inside (1, 5) even where the
// sigmoid rounds to 0 or 1.
double rescale(double raw);
// dS/dx = 4 sigmoid(x) (1 - sigmoid(x)).
double rescale_derivative(double raw);

// Four affine maps dim -> 1. Flat layout per dimension d:
//   params[d*(dim+1) .. d*(dim+1)+dim-1] = weights, params[d*(dim+1)+dim] = bias.
struct RegressionHeads {
  std::size_t dim = 0;
  std::vector<double> params;

  static RegressionHeads zeros(std::size_t dim);
  static std::size_t parameter_count(std::size_t dim) {
    return kNumDimensions * (dim + 1);
  }

  std::span<const double> weights(std::size_t d) const {
    return std::span<const double>(params).subspan(d * (dim + 1), dim);
  }
  double bias(std::size_t d) const { return params[d * (dim + 1) + dim]; }

  friend bool operator==(const RegressionHeads&, const RegressionHeads&) = default;
};

std::array<double, kNumDimensions> raw_outputs(std::span<const double> h,
                                               const RegressionHeads& heads);
ScoreVector predict(std::span<const double> h, const RegressionHeads& heads);

double loss(const ScoreVector& pred, const ScoreVector& gold);
double batch_loss(std::span<const ScoreVector> pred,
                  std::span<const ScoreVector> gold);

struct TrainConfig {
  int epochs = 5;
  std::size_t batch_size = 16;
  double lr_backbone = 2e-5;
  double lr_heads = 1e-4;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Standard deviation of the initial head weights; 0 gives zero heads.
  double head_init_scale = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

Json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const Json& j);

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;  // mean batch loss over the epoch
  std::array<double, kNumDimensions> dev_mae{};
  double dev_mae_avg = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

// An encoder plus four heads.
class Model {
 public:
  Model(std::unique_ptr<encoder::Encoder> enc, RegressionHeads heads);

  encoder::Encoder& encoder() { return *encoder_; }
  const encoder::Encoder& encoder() const { return *encoder_; }
  RegressionHeads& heads() { return heads_; }
  const RegressionHeads& heads() const { return heads_; }

  ScoreVector predict(const encoder::Features& f) const;
  ScoreVector predict(const EvaluationInstance& instance) const;

 private:
  std::unique_ptr<encoder::Encoder> encoder_;
  RegressionHeads heads_;
};

struct Example {
  const encoder::Features* features;
  ScoreVector gold;
};

struct Gradient {
  std::vector<double> encoder;
  std::vector<double> heads;
};

// Batch MSE loss; when `grad` is non-null the gradient is accumulated into it
// (it must already be sized to the model).
double loss_and_gradient(const Model& model, std::span<const Example> batch,
                         Gradient* grad);

struct RegressorCheckpoint {
  encoder::EncoderConfig encoder_config;
  std::vector<double> encoder_params;
  RegressionHeads heads;
  TrainConfig train_config;
  int epoch = 0;
  std::array<double, kNumDimensions> dev_mae{};
  double dev_mae_avg = 0.0;
  std::uint64_t seed = 0;
  std::vector<EpochRecord> history;

  // Throws a validation Error when sizes or dev MAE fields disagree.
  void validate() const;
  Model to_model() const;

  friend bool operator==(const RegressorCheckpoint&,
                         const RegressorCheckpoint&) = default;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Errors: empty split or an instance without gold scores.
RegressorCheckpoint train(std::span<const EvaluationInstance> train_set,
                          std::span<const EvaluationInstance> dev_set,
                          const encoder::EncoderConfig& ecfg,
                          const TrainConfig& tcfg,
                          const EpochCallback& on_epoch = {});

// Per-dimension MAE of the model on labelled instances.
std::array<double, kNumDimensions> dev_mae(
    const Model& model, std::span<const encoder::Features> features,
    std::span<const EvaluationInstance> instances);

struct BatchTiming {
  std::size_t examples = 0;
  double seconds = 0.0;
};

struct ScoreResult {
  std::vector<ScoreVector> scores;  // input order
  std::vector<BatchTiming> timings;
};

// Scores in chunks of `batch_size` using up to `jobs` threads. Every row is
// computed independently, so results do not depend on either knob.
ScoreResult score_batch(std::span<const EvaluationInstance> instances,
                        const Model& model, std::size_t batch_size = 64,
                        unsigned jobs = 1);
ScoreResult score_batch(std::span<const EvaluationInstance> instances,
                        const RegressorCheckpoint& ckpt,
                        std::size_t batch_size = 64, unsigned jobs = 1);

// Binary container: "OMNISCKP", u32 format version, u64 header length, JSON
// header, then the encoder and head parameter blocks (u64 count, f64 values,
// little endian).
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string serialize_checkpoint(const RegressorCheckpoint& ckpt);
RegressorCheckpoint deserialize_checkpoint(std::string_view bytes);
void save_checkpoint(const RegressorCheckpoint& ckpt,
                     const std::filesystem::path& path);
RegressorCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace omniscore::regressor
