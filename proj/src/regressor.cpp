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

#include "omniscore/regressor.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <thread>

#include "omniscore/io.hpp"
#include "omniscore/random.hpp"
#include "omniscore/simd/kernels.hpp"

namespace omniscore::regressor {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

const double kLowest = std::nextafter(kScaleMin, kScaleMax);
const double kHighest = std::nextafter(kScaleMax, kScaleMin);

}  // namespace

double rescale(double raw) {
  const double s = kScaleMin + (kScaleMax - kScaleMin) * sigmoid(raw);
  return std::clamp(s, kLowest, kHighest);
}

double rescale_derivative(double raw) {
  const double s = sigmoid(raw);
  return (kScaleMax - kScaleMin) * s * (1.0 - s);
}

RegressionHeads RegressionHeads::zeros(std::size_t dim) {
  RegressionHeads h;
  h.dim = dim;
  h.params.assign(parameter_count(dim), 0.0);
  return h;
}

std::array<double, kNumDimensions> raw_outputs(std::span<const double> h,
                                               const RegressionHeads& heads) {
  std::array<double, kNumDimensions> raw{};
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    raw[d] = simd::dot(heads.weights(d), h) + heads.bias(d);
  }
  return raw;
}

ScoreVector predict(std::span<const double> h, const RegressionHeads& heads) {
  const auto raw = raw_outputs(h, heads);
  ScoreVector out;
  for (std::size_t d = 0; d < kNumDimensions; ++d) out[d] = rescale(raw[d]);
  return out;
}

double loss(const ScoreVector& pred, const ScoreVector& gold) {
  double sum = 0.0;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const double e = pred[d] - gold[d];
    sum += e * e;
  }
  return sum / static_cast<double>(kNumDimensions);
}

double batch_loss(std::span<const ScoreVector> pred,
                  std::span<const ScoreVector> gold) {
  if (pred.size() != gold.size() || pred.empty()) {
    throw ValidationError("batch_loss: need equal, non-empty batches");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += loss(pred[i], gold[i]);
  return sum / static_cast<double>(pred.size());
}

// ---------------------------------------------------------------------------

void TrainConfig::validate() const {
  if (epochs < 1) throw ValidationError("train: epochs must be >= 1");
  if (batch_size < 1) throw ValidationError("train: batch size must be >= 1");
  if (!(lr_backbone > 0.0) || !(lr_heads > 0.0)) {
    throw ValidationError("train: learning rates must be positive");
  }
  if (!(weight_decay >= 0.0)) {
    throw ValidationError("train: weight decay must be non-negative");
  }
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ValidationError("train: betas must lie in [0, 1)");
  }
  if (!(eps > 0.0)) throw ValidationError("train: eps must be positive");
  if (!(head_init_scale >= 0.0)) {
    throw ValidationError("train: head init scale must be non-negative");
  }
}

Json to_json(const TrainConfig& c) {
  Json j;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["lr_backbone"] = c.lr_backbone;
  j["lr_heads"] = c.lr_heads;
  j["weight_decay"] = c.weight_decay;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["eps"] = c.eps;
  j["head_init_scale"] = c.head_init_scale;
  j["seed"] = c.seed;
  return j;
}

TrainConfig train_config_from_json(const Json& j) {
  TrainConfig c;
  c.epochs = j.at("epochs").get<int>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.lr_backbone = j.at("lr_backbone").get<double>();
  c.lr_heads = j.at("lr_heads").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.eps = j.at("eps").get<double>();
  c.head_init_scale = j.at("head_init_scale").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------

Model::Model(std::unique_ptr<encoder::Encoder> enc, RegressionHeads heads)
    : encoder_(std::move(enc)), heads_(std::move(heads)) {
  if (!encoder_) throw ValidationError("model: missing encoder");
  if (heads_.dim != encoder_->dim() ||
      heads_.params.size() != RegressionHeads::parameter_count(heads_.dim)) {
    throw ValidationError("model: head size does not match encoder dim");
  }
}

ScoreVector Model::predict(const encoder::Features& f) const {
  std::vector<double> h(encoder_->dim());
  encoder::Activations act;
  encoder_->forward(f, act, h);
  return regressor::predict(h, heads_);
}

ScoreVector Model::predict(const EvaluationInstance& instance) const {
  return predict(encoder_->featurize(instance));
}

double loss_and_gradient(const Model& model, std::span<const Example> batch,
                         Gradient* grad) {
  if (batch.empty()) throw ValidationError("loss: empty batch");
  const auto& enc = model.encoder();
  const auto& heads = model.heads();
  const std::size_t dim = enc.dim();
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  const double inv_d = 1.0 / static_cast<double>(kNumDimensions);

  std::vector<double> h(dim);
  std::vector<double> d_h(dim);
  encoder::Activations act;
  double total = 0.0;
  for (const Example& ex : batch) {
    enc.forward(*ex.features, act, h);
    const auto raw = raw_outputs(h, heads);
    double item = 0.0;
    std::array<double, kNumDimensions> d_raw{};
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const double e = rescale(raw[d]) - ex.gold[d];
      item += e * e;
      d_raw[d] = 2.0 * e * inv_d * inv_b * rescale_derivative(raw[d]);
    }
    total += item * inv_d;
    if (grad == nullptr) continue;

    std::fill(d_h.begin(), d_h.end(), 0.0);
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      double* gw = grad->heads.data() + d * (dim + 1);
      simd::kernels().axpy(d_raw[d], h.data(), gw, dim);
      gw[dim] += d_raw[d];
      simd::kernels().axpy(d_raw[d], heads.weights(d).data(), d_h.data(), dim);
    }
    enc.backward(*ex.features, act, d_h, grad->encoder);
  }
  return total * inv_b;
}

// ---------------------------------------------------------------------------

void RegressorCheckpoint::validate() const {
  encoder_config.validate();
  train_config.validate();
  if (encoder_params.size() != encoder::parameter_count(encoder_config)) {
    throw ValidationError("checkpoint: encoder parameter count mismatch");
  }
  if (heads.dim != encoder_config.embedding_dim ||
      heads.params.size() != RegressionHeads::parameter_count(heads.dim)) {
    throw ValidationError("checkpoint: head size mismatch");
  }
  const double avg =
      (dev_mae[0] + dev_mae[1] + dev_mae[2] + dev_mae[3]) / 4.0;
  if (avg != dev_mae_avg) {
    throw ValidationError("checkpoint: averaged dev MAE is not the mean of the four");
  }
}

Model RegressorCheckpoint::to_model() const {
  return Model(encoder::make_encoder(encoder_config, encoder_params), heads);
}

std::array<double, kNumDimensions> dev_mae(
    const Model& model, std::span<const encoder::Features> features,
    std::span<const EvaluationInstance> instances) {
  std::array<double, kNumDimensions> sum{};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ScoreVector p = model.predict(features[i]);
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      sum[d] += std::abs(p[d] - (*instances[i].gold)[d]);
    }
  }
  for (double& s : sum) s /= static_cast<double>(instances.size());
  return sum;
}

namespace {

void require_gold(std::span<const EvaluationInstance> set, const char* name) {
  if (set.empty()) {
    throw ValidationError(std::string("train: empty ") + name + " split");
  }
  for (const auto& inst : set) {
    if (!inst.gold) {
      throw ValidationError(std::string("train: ") + name + " instance \"" +
                            inst.id + "\" has no gold scores");
    }
  }
}

std::vector<encoder::Features> featurize_all(
    const encoder::Encoder& enc, std::span<const EvaluationInstance> set) {
  std::vector<encoder::Features> out;
  out.reserve(set.size());
  for (const auto& inst : set) out.push_back(enc.featurize(inst));
  return out;
}

}  // namespace

RegressorCheckpoint train(std::span<const EvaluationInstance> train_set,
                          std::span<const EvaluationInstance> dev_set,
                          const encoder::EncoderConfig& ecfg,
                          const TrainConfig& tcfg,
                          const EpochCallback& on_epoch) {
  tcfg.validate();
  ecfg.validate();
  require_gold(train_set, "train");
  require_gold(dev_set, "dev");

  RegressionHeads heads = RegressionHeads::zeros(ecfg.embedding_dim);
  if (tcfg.head_init_scale > 0.0) {
    Rng rng(mix64(tcfg.seed ^ 0x68656164ULL));
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      for (std::size_t i = 0; i < ecfg.embedding_dim; ++i) {
        heads.params[d * (ecfg.embedding_dim + 1) + i] =
            tcfg.head_init_scale * rng.normal();
      }
    }
  }
  Model model(encoder::make_encoder(ecfg), std::move(heads));

  const auto train_features = featurize_all(model.encoder(), train_set);
  const auto dev_features = featurize_all(model.encoder(), dev_set);

  const std::size_t n_enc = model.encoder().params().size();
  const std::size_t n_head = model.heads().params.size();
  Gradient grad{std::vector<double>(n_enc), std::vector<double>(n_head)};
  std::vector<double> m_enc(n_enc), v_enc(n_enc), m_head(n_head), v_head(n_head);

  RegressorCheckpoint best;
  best.encoder_config = ecfg;
  best.train_config = tcfg;
  best.seed = tcfg.seed;
  bool have_best = false;

  std::vector<std::size_t> order(train_set.size());
  std::vector<Example> batch;
  batch.reserve(tcfg.batch_size);
  std::uint64_t step = 0;
  const auto& k = simd::kernels();

  for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(mix64(tcfg.seed + static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(std::span<std::size_t>(order));

    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += tcfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + tcfg.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back({&train_features[order[i]], *train_set[order[i]].gold});
      }
      std::fill(grad.encoder.begin(), grad.encoder.end(), 0.0);
      std::fill(grad.heads.begin(), grad.heads.end(), 0.0);
      loss_sum += loss_and_gradient(model, batch, &grad);
      ++batches;

      ++step;
      const double t = static_cast<double>(step);
      simd::AdamWStep s;
      s.beta1 = tcfg.beta1;
      s.beta2 = tcfg.beta2;
      s.eps = tcfg.eps;
      s.weight_decay = tcfg.weight_decay;
      s.bias_correction1 = 1.0 - std::pow(tcfg.beta1, t);
      s.bias_correction2 = 1.0 - std::pow(tcfg.beta2, t);
      s.lr = tcfg.lr_backbone;
      k.adamw_step(model.encoder().params().data(), grad.encoder.data(),
                   m_enc.data(), v_enc.data(), n_enc, s);
      s.lr = tcfg.lr_heads;
      k.adamw_step(model.heads().params.data(), grad.heads.data(),
                   m_head.data(), v_head.data(), n_head, s);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(batches);
    rec.dev_mae = dev_mae(model, dev_features, dev_set);
    rec.dev_mae_avg =
        (rec.dev_mae[0] + rec.dev_mae[1] + rec.dev_mae[2] + rec.dev_mae[3]) / 4.0;
    best.history.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (!have_best || rec.dev_mae_avg < best.dev_mae_avg) {
      have_best = true;
      best.epoch = epoch;
      best.dev_mae = rec.dev_mae;
      best.dev_mae_avg = rec.dev_mae_avg;
      const auto p = model.encoder().params();
      best.encoder_params.assign(p.begin(), p.end());
      best.heads = model.heads();
    }
  }
  best.validate();
  return best;
}

// ---------------------------------------------------------------------------

ScoreResult score_batch(std::span<const EvaluationInstance> instances,
                        const Model& model, std::size_t batch_size,
                        unsigned jobs) {
  if (batch_size == 0) throw ValidationError("score: batch size must be >= 1");
  ScoreResult result;
  result.scores.resize(instances.size());
  const std::size_t n_batches = (instances.size() + batch_size - 1) / batch_size;
  result.timings.resize(n_batches);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < n_batches; b = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::size_t begin = b * batch_size;
      const std::size_t end = std::min(instances.size(), begin + batch_size);
      for (std::size_t i = begin; i < end; ++i) {
        result.scores[i] = model.predict(instances[i]);
      }
      const auto t1 = std::chrono::steady_clock::now();
      result.timings[b] = {end - begin,
                           std::chrono::duration<double>(t1 - t0).count()};
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n_batches)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

ScoreResult score_batch(std::span<const EvaluationInstance> instances,
                        const RegressorCheckpoint& ckpt, std::size_t batch_size,
                        unsigned jobs) {
  ckpt.validate();
  const Model model = ckpt.to_model();
  return score_batch(instances, model, batch_size, jobs);
}

// ---------------------------------------------------------------------------
// Checkpoint container.

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'O', 'M', 'N', 'I', 'S', 'C', 'K', 'P'};

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

void put_block(std::string& out, std::span<const double> values) {
  put<std::uint64_t>(out, values.size());
  out.append(reinterpret_cast<const char*>(values.data()),
             values.size() * sizeof(double));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::vector<double> block() {
    const auto n = get<std::uint64_t>();
    if (n > (bytes_.size() - pos_) / sizeof(double)) {
      throw ValidationError("checkpoint: truncated parameter block");
    }
    std::vector<double> v(n);
    std::memcpy(v.data(), bytes_.data() + pos_, n * sizeof(double));
    pos_ += n * sizeof(double);
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw ValidationError("checkpoint: truncated file");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

Json history_json(const std::vector<EpochRecord>& history) {
  Json arr = Json::array();
  for (const auto& r : history) {
    Json j;
    j["epoch"] = r.epoch;
    j["train_loss"] = r.train_loss;
    j["dev_mae"] = r.dev_mae;
    j["dev_mae_avg"] = r.dev_mae_avg;
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

std::string serialize_checkpoint(const RegressorCheckpoint& ckpt) {
  ckpt.validate();
  Json header;
  header["encoder"] = encoder::to_json(ckpt.encoder_config);
  header["train"] = to_json(ckpt.train_config);
  header["epoch"] = ckpt.epoch;
  header["dev_mae"] = ckpt.dev_mae;
  header["dev_mae_avg"] = ckpt.dev_mae_avg;
  header["seed"] = ckpt.seed;
  header["history"] = history_json(ckpt.history);
  const std::string text = header.dump();

  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint64_t>(out, text.size());
  out += text;
  put_block(out, ckpt.encoder_params);
  put_block(out, ckpt.heads.params);
  return out;
}

RegressorCheckpoint deserialize_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw ValidationError("checkpoint: bad magic, not a checkpoint file");
  }
  const auto version = r.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw ValidationError("checkpoint: format version " + std::to_string(version) +
                          " is not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  const auto header_len = r.get<std::uint64_t>();
  RegressorCheckpoint ckpt;
  try {
    const Json header = Json::parse(r.take(header_len));
    ckpt.encoder_config = encoder::encoder_config_from_json(header.at("encoder"));
    ckpt.train_config = train_config_from_json(header.at("train"));
    ckpt.epoch = header.at("epoch").get<int>();
    ckpt.dev_mae = header.at("dev_mae").get<std::array<double, kNumDimensions>>();
    ckpt.dev_mae_avg = header.at("dev_mae_avg").get<double>();
    ckpt.seed = header.at("seed").get<std::uint64_t>();
    for (const auto& j : header.at("history")) {
      EpochRecord rec;
      rec.epoch = j.at("epoch").get<int>();
      rec.train_loss = j.at("train_loss").get<double>();
      rec.dev_mae = j.at("dev_mae").get<std::array<double, kNumDimensions>>();
      rec.dev_mae_avg = j.at("dev_mae_avg").get<double>();
      ckpt.history.push_back(rec);
    }
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("checkpoint: bad header: ") + e.what());
  }
  ckpt.encoder_params = r.block();
  ckpt.heads.dim = ckpt.encoder_config.embedding_dim;
  ckpt.heads.params = r.block();
  if (!r.done()) throw ValidationError("checkpoint: trailing bytes");
  ckpt.validate();
  return ckpt;
}

void save_checkpoint(const RegressorCheckpoint& ckpt,
                     const std::filesystem::path& path) {
  io::write_file_atomic(path, serialize_checkpoint(ckpt));
}

RegressorCheckpoint load_checkpoint(const std::filesystem::path& path) {
  return deserialize_checkpoint(io::read_file(path));
}

}  // namespace omniscore::regressor
