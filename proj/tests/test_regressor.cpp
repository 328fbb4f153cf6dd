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
#include <set>

#include "doctest.h"
#include "omniscore/regressor.hpp"
#include "omniscore/synthetic.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::regressor;
using encoder::EncoderConfig;
using encoder::EncoderKind;

namespace {

EncoderConfig tiny_hashed() {
  EncoderConfig c;
  c.embedding_dim = 6;
  c.hash_buckets = 1u << 8;
  return c;
}

EncoderConfig tiny_transformer() {
  EncoderConfig c;
  c.kind = EncoderKind::kTinyTransformer;
  c.embedding_dim = 6;
  c.heads = 2;
  c.layers = 2;
  c.context_length = 10;
  c.vocab_size = 32;
  c.ffn_dim = 5;
  c.init_scale = 1.5;
  return c;
}

RegressionHeads random_heads(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  auto h = RegressionHeads::zeros(dim);
  for (double& p : h.params) p = rng.normal();
  return h;
}

std::vector<EvaluationInstance> planted(std::size_t n, std::uint64_t seed) {
  return synthetic::planted_corpus({.size = n, .seed = seed});
}

// Central differences over every parameter the batch can reach.
double max_relative_error(Model& model, const std::vector<encoder::Features>& feats,
                          const std::vector<EvaluationInstance>& insts) {
  std::vector<Example> batch;
  for (std::size_t i = 0; i < insts.size(); ++i) batch.push_back({&feats[i], *insts[i].gold});
  Gradient g{std::vector<double>(model.encoder().params().size(), 0.0),
             std::vector<double>(model.heads().params.size(), 0.0)};
  loss_and_gradient(model, batch, &g);

  constexpr double h = 1e-5;
  double worst = 0.0;
  auto probe = [&](double& p, double analytic) {
    const double saved = p;
    p = saved + h;
    const double up = loss_and_gradient(model, batch, nullptr);
    p = saved - h;
    const double down = loss_and_gradient(model, batch, nullptr);
    p = saved;
    const double numeric = (up - down) / (2 * h);
    const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-8});
    // Both negligible: nothing to compare.
    if (std::abs(numeric) < 1e-9 && std::abs(analytic) < 1e-9) return;
    worst = std::max(worst, std::abs(numeric - analytic) / denom);
  };
  std::set<std::size_t> touched;
  for (const auto& f : feats) {
    for (auto i : model.encoder().touched_parameters(f)) touched.insert(i);
  }
  for (auto i : touched) probe(model.encoder().params()[i], g.encoder[i]);
  for (std::size_t i = 0; i < g.heads.size(); ++i) probe(model.heads().params[i], g.heads[i]);
  // Untouched parameters get exactly zero gradient.
  for (std::size_t i = 0; i < g.encoder.size(); ++i) {
    if (!touched.count(i)) CHECK(g.encoder[i] == 0.0);
  }
  return worst;
}

}  // namespace

TEST_CASE("rescale maps raw outputs onto the open scale") {
  CHECK(rescale(0.0) == 3.0);
  CHECK(rescale(std::log(3.0)) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(rescale(-std::log(3.0)) == doctest::Approx(2.0).epsilon(1e-15));
  double prev = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = -50.0 + 0.01 * i;
    const double s = rescale(x);
    CHECK(s > 1.0);
    CHECK(s < 5.0);
    CHECK(s >= prev);
    prev = s;
    // S(-x) = 6 - S(x)
    CHECK(rescale(-x) == doctest::Approx(6.0 - s).epsilon(1e-12));
  }
  for (double x : {-1e300, -800.0, 800.0, 1e300}) {
    CHECK(rescale(x) > 1.0);
    CHECK(rescale(x) < 5.0);
  }
  CHECK(rescale_derivative(0.0) == 1.0);
  for (double x : {-3.0, -0.5, 0.7, 2.0}) {
    const double num = (rescale(x + 1e-6) - rescale(x - 1e-6)) / 2e-6;
    CHECK(rescale_derivative(x) == doctest::Approx(num).epsilon(1e-8));
  }
}

TEST_CASE("loss is the dimension-averaged squared error") {
  CHECK(loss({3, 3, 3, 3}, {3, 3, 3, 3}) == 0.0);
  CHECK(loss({3, 3, 3, 3}, {5, 5, 5, 5}) == 4.0);
  CHECK(loss({4, 4, 4, 4}, {3, 3, 3, 3}) == 1.0);
  CHECK(loss({1, 3, 3, 3}, {3, 3, 3, 3}) == 1.0);
  const std::vector<ScoreVector> p{{3, 3, 3, 3}, {4, 4, 4, 4}}, g{{5, 5, 5, 5}, {3, 3, 3, 3}};
  CHECK(batch_loss(p, g) == 2.5);
}

TEST_CASE("zero heads predict the scale midpoint") {
  const auto h = RegressionHeads::zeros(4);
  const std::vector<double> x{0.3, -1, 2, 0.5};
  CHECK(predict(x, h) == ScoreVector(3, 3, 3, 3));
  CHECK(RegressionHeads::parameter_count(256) == 1028);
}

TEST_CASE("analytic gradients match finite differences") {
  auto insts = planted(5, 13);
  SUBCASE("hashed n-gram encoder") {
    Model model(encoder::make_encoder(tiny_hashed()), random_heads(6, 1));
    // Non-zero bias so the tanh is not at its symmetric point.
    for (double& p : model.encoder().params()) p *= 0.7;
    std::vector<encoder::Features> feats;
    for (const auto& i : insts) feats.push_back(model.encoder().featurize(i));
    const double err = max_relative_error(model, feats, insts);
    MESSAGE("hashed encoder worst relative error " << err);
    CHECK(err < 1e-5);
  }
  SUBCASE("tiny transformer encoder") {
    for (auto& i : insts) i.inputs = {{"question", "q"}};  // keep candidates in context
    Model model(encoder::make_encoder(tiny_transformer()), random_heads(6, 2));
    std::vector<encoder::Features> feats;
    for (const auto& i : insts) feats.push_back(model.encoder().featurize(i));
    const double err = max_relative_error(model, feats, insts);
    MESSAGE("transformer worst relative error " << err);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("a zero-loss example only applies weight decay") {
  auto inst = planted(1, 2);
  inst[0].gold = ScoreVector(3, 3, 3, 3);
  TrainConfig tc;
  tc.epochs = 2;
  tc.batch_size = 1;
  const auto ecfg = tiny_hashed();
  const auto init = encoder::make_encoder(ecfg);
  const auto ckpt = train(inst, inst, ecfg, tc);
  CHECK(ckpt.epoch == 1);  // ties keep the earliest epoch
  CHECK(ckpt.history.size() == 2);
  CHECK(ckpt.history[0].train_loss == 0.0);
  CHECK(ckpt.dev_mae_avg == 0.0);
  CHECK(ckpt.heads == RegressionHeads::zeros(6));
  const double decay = 1.0 - tc.lr_backbone * tc.weight_decay;
  for (std::size_t i = 0; i < init->params().size(); ++i) {
    CHECK(ckpt.encoder_params[i] == init->params()[i] * decay);
  }
}

TEST_CASE("training is deterministic and reduces dev error") {
  const auto corpus = planted(400, 21);
  const auto tr = synthetic::select_split(corpus, Split::kTrain);
  const auto dv = synthetic::select_split(corpus, Split::kDev);
  auto ecfg = tiny_hashed();
  ecfg.embedding_dim = 32;
  ecfg.hash_buckets = 1u << 12;
  TrainConfig tc;
  tc.epochs = 3;
  tc.lr_backbone = 1e-3;
  tc.lr_heads = 1e-2;
  std::vector<EpochRecord> seen;
  const auto a = train(tr, dv, ecfg, tc, [&](const EpochRecord& r) { seen.push_back(r); });
  const auto b = train(tr, dv, ecfg, tc);
  CHECK(a == b);
  REQUIRE(seen.size() == 3);
  CHECK(seen == a.history);

  // Constant-midpoint baseline on the same dev set.
  double base = 0;
  for (const auto& i : dv) {
    for (std::size_t d = 0; d < kNumDimensions; ++d) base += std::abs((*i.gold)[d] - 3.0);
  }
  base /= 4.0 * static_cast<double>(dv.size());
  CHECK(a.dev_mae_avg < base);

  // The selected epoch is the first one with minimal dev MAE.
  double best = a.history[0].dev_mae_avg;
  int best_epoch = 1;
  for (const auto& r : a.history) {
    if (r.dev_mae_avg < best) {
      best = r.dev_mae_avg;
      best_epoch = r.epoch;
    }
  }
  CHECK(a.epoch == best_epoch);
  CHECK(a.dev_mae_avg == best);
}

TEST_CASE("scores do not depend on batch size or thread count") {
  const auto corpus = planted(97, 5);
  Model model(encoder::make_encoder(tiny_hashed()), random_heads(6, 9));
  const auto ref = score_batch(corpus, model, 1, 1).scores;
  REQUIRE(ref.size() == corpus.size());
  for (std::size_t bs : {3u, 16u, 64u, 500u}) {
    for (unsigned jobs : {1u, 4u}) {
      const auto r = score_batch(corpus, model, bs, jobs);
      CHECK(r.scores == ref);
      std::size_t n = 0;
      for (const auto& t : r.timings) n += t.examples;
      CHECK(n == corpus.size());
    }
  }
  for (const auto& s : ref) CHECK(s.valid());
  for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(model.predict(corpus[i]) == ref[i]);
}

TEST_CASE("checkpoint round-trip and version check") {
  const auto corpus = planted(60, 8);
  TrainConfig tc;
  tc.epochs = 2;
  const auto ckpt = train(synthetic::select_split(corpus, Split::kTrain),
                          synthetic::select_split(corpus, Split::kDev), tiny_transformer(), tc);
  testing::ScratchDir dir("ckpt");
  save_checkpoint(ckpt, dir / "m.ckpt");
  const auto back = load_checkpoint(dir / "m.ckpt");
  CHECK(back == ckpt);
  CHECK(score_batch(corpus, back).scores == score_batch(corpus, ckpt).scores);

  std::string bytes = serialize_checkpoint(ckpt);
  CHECK(bytes.substr(0, 8) == "OMNISCKP");
  std::string bumped = bytes;
  const std::uint32_t v2 = kCheckpointVersion + 1;
  std::memcpy(bumped.data() + 8, &v2, 4);
  try {
    deserialize_checkpoint(bumped);
    FAIL("expected version error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("version") != std::string::npos);
  }
  CHECK_THROWS_AS(deserialize_checkpoint(bytes.substr(0, bytes.size() - 3)), Error);
  CHECK_THROWS_AS(deserialize_checkpoint("NOTACKPT"), Error);

  auto bad = ckpt;
  bad.dev_mae_avg += 1e-9;
  CHECK_THROWS_AS(bad.validate(), Error);
  CHECK_THROWS_AS(load_checkpoint(dir / "missing.ckpt"), Error);
}

TEST_CASE("training rejects unusable inputs") {
  auto corpus = planted(20, 1);
  const auto ecfg = tiny_hashed();
  CHECK_THROWS_AS(train({}, corpus, ecfg, {}), Error);
  auto nogold = corpus;
  nogold[3].gold.reset();
  CHECK_THROWS_AS(train(nogold, corpus, ecfg, {}), Error);
  TrainConfig tc;
  tc.batch_size = 0;
  CHECK_THROWS_AS(tc.validate(), Error);
  CHECK(train_config_from_json(to_json(TrainConfig{})) == TrainConfig{});
}
