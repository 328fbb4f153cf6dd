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

#include "omniscore/types.hpp"

#include <cmath>

namespace omniscore {

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::kQA: return "QA";
    case TaskKind::kMT: return "MT";
    case TaskKind::kSummarization: return "Summarization";
    case TaskKind::kHeadline: return "Headline";
    case TaskKind::kParaphrase: return "Paraphrase";
    case TaskKind::kChat: return "Chat";
  }
  return "?";
}

std::optional<TaskKind> parse_task(std::string_view text) {
  for (TaskKind t : kAllTasks) {
    if (to_string(t) == text) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view text) {
  for (Split s : kAllSplits) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::string_view dimension_key(std::size_t index) {
  static constexpr std::array<std::string_view, kNumDimensions> kKeys = {
      "informativeness", "clarity", "plausibility", "faithfulness"};
  return kKeys.at(index);
}

std::string_view dimension_key(Dimension dim) {
  return dimension_key(static_cast<std::size_t>(dim));
}

std::string_view dimension_label(std::size_t index) {
  static constexpr std::array<std::string_view, kNumDimensions> kLabels = {
      "Inf.", "Cla.", "Pla.", "Fai."};
  return kLabels.at(index);
}

bool ScoreVector::valid() const {
  for (double v : values) {
    if (!std::isfinite(v) || v < kScaleMin || v > kScaleMax) return false;
  }
  return true;
}

}  // namespace omniscore
