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

#include "omniscore/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "omniscore/prompts.hpp"
#include "omniscore/random.hpp"

namespace omniscore::synthetic {

namespace {

struct LanguagePool {
  std::string_view code;
  std::array<std::string_view, 8> words;
};

// Filler vocabulary per language. None of these contain a marker word.
constexpr std::array<LanguagePool, 5> kLanguages = {{
    {"en", {"river", "window", "market", "season", "garden", "letter", "station", "yellow"}},
    {"ar", {"\xd9\x83\xd8\xaa\xd8\xa7\xd8\xa8", "\xd9\x85\xd8\xaf\xd9\x8a\xd9\x86\xd8\xa9",
            "\xd8\xa8\xd8\xad\xd8\xb1", "\xd8\xb4\xd9\x85\xd8\xb3",
            "\xd9\x82\xd9\x84\xd9\x85", "\xd8\xb3\xd9\x88\xd9\x82",
            "\xd9\x86\xd9\x87\xd8\xb1", "\xd8\xae\xd8\xa8\xd8\xb2"}},
    {"bn", {"\xe0\xa6\xac\xe0\xa6\x87", "\xe0\xa6\xa8\xe0\xa6\xa6\xe0\xa7\x80",
            "\xe0\xa6\x86\xe0\xa6\x95\xe0\xa6\xbe\xe0\xa6\xb6",
            "\xe0\xa6\xac\xe0\xa6\xbe\xe0\xa6\xa1\xe0\xa6\xbc\xe0\xa6\xbf",
            "\xe0\xa6\xab\xe0\xa7\x81\xe0\xa6\xb2", "\xe0\xa6\x9c\xe0\xa6\xb2",
            "\xe0\xa6\xb0\xe0\xa6\xbe\xe0\xa6\xb8\xe0\xa7\x8d\xe0\xa6\xa4\xe0\xa6\xbe",
            "\xe0\xa6\x97\xe0\xa6\xbe\xe0\xa6\x9b"}},
    {"hi", {"\xe0\xa4\x98\xe0\xa4\xb0", "\xe0\xa4\xaa\xe0\xa4\xbe\xe0\xa4\xa8\xe0\xa5\x80",
            "\xe0\xa4\xb6\xe0\xa4\xb9\xe0\xa4\xb0",
            "\xe0\xa4\x95\xe0\xa4\xbf\xe0\xa4\xa4\xe0\xa4\xbe\xe0\xa4\xac",
            "\xe0\xa4\xb8\xe0\xa5\x82\xe0\xa4\xb0\xe0\xa4\x9c",
            "\xe0\xa4\xa8\xe0\xa4\xa6\xe0\xa5\x80",
            "\xe0\xa4\xb0\xe0\xa4\xbe\xe0\xa4\xb8\xe0\xa5\x8d\xe0\xa4\xa4\xe0\xa4\xbe",
            "\xe0\xa4\xac\xe0\xa4\xbe\xe0\xa4\x9c\xe0\xa4\xbe\xe0\xa4\xb0"}},
    {"de", {"fluss", "fenster", "markt", "sommer", "brief", "strasse", "wolke", "baum"}},
}};

constexpr std::array<MarkerSet, kNumDimensions> kMarkers = {{
    {"detailed", "vague"},
    {"lucid", "garbled"},
    {"coherent", "absurd"},
    {"accurate", "fabricated"},
}};

std::string_view source_for(TaskKind task, std::size_t i) {
  switch (task) {
    case TaskKind::kQA: return (i / kAllTasks.size()) % 2 == 0 ? "NQ" : "MultiNativQA";
    case TaskKind::kMT: return "planted-mt";
    case TaskKind::kSummarization: return "planted-summ";
    case TaskKind::kHeadline: return "planted-head";
    case TaskKind::kParaphrase: return "planted-para";
    case TaskKind::kChat: return "WildChat";
  }
  return "planted";
}

std::string filler(Rng& rng, const LanguagePool& lang, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += lang.words[rng.below(lang.words.size())];
  }
  return out;
}

}  // namespace

const std::array<MarkerSet, kNumDimensions>& marker_sets() { return kMarkers; }

std::array<int, kNumDimensions> latent_quality(std::string_view candidate) {
  std::array<int, kNumDimensions> q{1, 1, 1, 1};
  std::size_t pos = 0;
  while (pos < candidate.size()) {
    std::size_t end = candidate.find(' ', pos);
    if (end == std::string_view::npos) end = candidate.size();
    const std::string_view word = candidate.substr(pos, end - pos);
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (word == kMarkers[d].positive) ++q[d];
    }
    pos = end + 1;
  }
  for (int& v : q) v = std::min(v, 5);
  return q;
}

std::vector<EvaluationInstance> planted_corpus(const PlantedConfig& cfg) {
  if (cfg.size == 0) throw ValidationError("planted corpus: size must be > 0");
  if (cfg.filler_min > cfg.filler_max) {
    throw ValidationError("planted corpus: filler_min > filler_max");
  }
  if (cfg.train_fraction < 0.0 || cfg.dev_fraction < 0.0 ||
      cfg.train_fraction + cfg.dev_fraction > 1.0) {
    throw ValidationError("planted corpus: bad split fractions");
  }
  Rng rng(mix64(cfg.seed));
  std::vector<EvaluationInstance> out;
  out.reserve(cfg.size);
  for (std::size_t i = 0; i < cfg.size; ++i) {
    EvaluationInstance inst;
    char id[32];
    std::snprintf(id, sizeof(id), "planted-%06zu", i);
    inst.id = id;
    inst.task = kAllTasks[i % kAllTasks.size()];
    // Translation pairs are English to one of the other languages.
    const bool mt = inst.task == TaskKind::kMT;
    const LanguagePool& lang =
        mt ? kLanguages[1 + rng.below(kLanguages.size() - 1)]
           : kLanguages[rng.below(kLanguages.size())];
    inst.language = mt ? "en_" + std::string(lang.code) : std::string(lang.code);
    inst.source_dataset = std::string(source_for(inst.task, i));

    for (const auto& field :
         prompts::required_input_fields(inst.task, inst.source_dataset)) {
      if (field == "src_lang") {
        inst.inputs[field] = "English";
      } else if (field == "tar_lang") {
        inst.inputs[field] = std::string(lang.code);
      } else {
        inst.inputs[field] = filler(rng, lang, 3 + rng.below(6));
      }
    }

    std::array<int, kNumDimensions> q{};
    std::vector<std::string_view> words;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      q[d] = 1 + static_cast<int>(rng.below(5));
      const auto pos = static_cast<std::size_t>(q[d] - 1);
      for (std::size_t k = 0; k < kMarkersPerDimension; ++k) {
        words.push_back(k < pos ? kMarkers[d].positive : kMarkers[d].negative);
      }
    }
    const std::size_t n_fill =
        cfg.filler_min + rng.below(cfg.filler_max - cfg.filler_min + 1);
    for (std::size_t k = 0; k < n_fill; ++k) {
      words.push_back(lang.words[rng.below(lang.words.size())]);
    }
    rng.shuffle(std::span<std::string_view>(words));
    for (std::size_t k = 0; k < words.size(); ++k) {
      if (k) inst.candidate += ' ';
      inst.candidate += words[k];
    }

    RatingQuad r1{}, r2{};
    ScoreVector gold;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const int delta = static_cast<int>(rng.below(3)) - 1;
      r1[d] = q[d];
      r2[d] = std::clamp(q[d] + delta, 1, 5);
      gold[d] = (r1[d] + r2[d]) / 2.0;
    }
    inst.gold = gold;
    inst.raw_ratings = std::vector<RatingQuad>{r1, r2};

    const double u = rng.uniform();
    inst.split = u < cfg.train_fraction ? Split::kTrain
                 : u < cfg.train_fraction + cfg.dev_fraction ? Split::kDev
                                                             : Split::kTest;
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<EvaluationInstance> select_split(
    std::span<const EvaluationInstance> instances, Split split) {
  std::vector<EvaluationInstance> out;
  for (const auto& inst : instances) {
    if (inst.split == split) out.push_back(inst);
  }
  return out;
}

}  // namespace omniscore::synthetic
