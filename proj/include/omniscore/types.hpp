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

// Core record model shared by every stage of the toolkit.

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omniscore {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  kValidation = 1,
  kIo = 2,
  kJudge = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error ValidationError(const std::string& what) {
  return Error(ErrorKind::kValidation, what);
}
inline Error IoError(const std::string& what) {
  return Error(ErrorKind::kIo, what);
}

enum class TaskKind { kQA, kMT, kSummarization, kHeadline, kParaphrase, kChat };

inline constexpr std::array<TaskKind, 6> kAllTasks = {
    TaskKind::kQA,       TaskKind::kMT,         TaskKind::kSummarization,
    TaskKind::kHeadline, TaskKind::kParaphrase, TaskKind::kChat};

std::string_view to_string(TaskKind task);
// Exact match against the six canonical names; anything else returns nullopt.
std::optional<TaskKind> parse_task(std::string_view text);

enum class Split { kTrain, kDev, kTest };

inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kDev,
                                                    Split::kTest};

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view text);

// Fixed dimension order. Serialization, heads and metrics all index by it.
enum class Dimension : std::size_t {
  kInformativeness = 0,
  kClarity = 1,
  kPlausibility = 2,
  kFaithfulness = 3,
};

inline constexpr std::size_t kNumDimensions = 4;
inline constexpr std::array<Dimension, kNumDimensions> kAllDimensions = {
    Dimension::kInformativeness, Dimension::kClarity, Dimension::kPlausibility,
    Dimension::kFaithfulness};

// Lowercase key used in JSON ("informativeness", ...).
std::string_view dimension_key(Dimension dim);
std::string_view dimension_key(std::size_t index);
// Short column label ("Inf.", "Cla.", ...).
std::string_view dimension_label(std::size_t index);

inline constexpr double kScaleMin = 1.0;
inline constexpr double kScaleMax = 5.0;

struct ScoreVector {
  std::array<double, kNumDimensions> values{};

  ScoreVector() = default;
  ScoreVector(double informativeness, double clarity, double plausibility,
              double faithfulness)
      : values{informativeness, clarity, plausibility, faithfulness} {}

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](Dimension d) { return values[static_cast<std::size_t>(d)]; }
  double operator[](Dimension d) const {
    return values[static_cast<std::size_t>(d)];
  }

  // All four components finite and inside [1, 5].
  bool valid() const;

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

using RatingQuad = std::array<int, kNumDimensions>;

struct EvaluationInstance {
  std::string id;
  TaskKind task = TaskKind::kQA;
  std::string language;
  Split split = Split::kTrain;
  std::string source_dataset;
  std::map<std::string, std::string> inputs;
  std::string candidate;
  std::optional<ScoreVector> gold;
  std::optional<std::vector<RatingQuad>> raw_ratings;

  friend bool operator==(const EvaluationInstance&,
                         const EvaluationInstance&) = default;
};

}  // namespace omniscore
