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

// Judge verdicts: strict parsing of untrusted judge output into a validated
// four-dimension verdict, and the canonical serialization back to JSON.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "omniscore/corpus.hpp"
#include "omniscore/prompts.hpp"
#include "omniscore/types.hpp"

namespace omniscore::verdict {

enum class ReasonCode {
  kNotJson,
  kMissingField,
  kScoreOutOfRange,
  kScoreNotInteger,
  kBadIssueType,
  kSpanNotSubstring,
  kSpanTooLong,
  kSpanHasEllipsis,
  kTooManyIssues,
  kConfidenceOutOfRange,
  kExtraMarkdown,
};

inline constexpr std::array<ReasonCode, 11> kAllReasonCodes = {
    ReasonCode::kNotJson,          ReasonCode::kMissingField,
    ReasonCode::kScoreOutOfRange,  ReasonCode::kScoreNotInteger,
    ReasonCode::kBadIssueType,     ReasonCode::kSpanNotSubstring,
    ReasonCode::kSpanTooLong,      ReasonCode::kSpanHasEllipsis,
    ReasonCode::kTooManyIssues,    ReasonCode::kConfidenceOutOfRange,
    ReasonCode::kExtraMarkdown};

// Snake-case code, e.g. "span_not_substring".
std::string_view to_string(ReasonCode code);
std::optional<ReasonCode> parse_reason(std::string_view text);

enum class IssueKind {
  kHallucination,
  kDistortion,
  kContradiction,
  kUnsupportedSpecificity,
};

std::string_view to_string(IssueKind kind);
std::optional<IssueKind> parse_issue_kind(std::string_view text);

inline constexpr std::size_t kMaxIssues = 6;
inline constexpr std::size_t kMaxSpanWords = 25;

struct FaithfulnessIssue {
  IssueKind kind = IssueKind::kHallucination;
  std::string text_span;

  friend bool operator==(const FaithfulnessIssue&,
                         const FaithfulnessIssue&) = default;
};

struct DimensionEntry {
  int score = 0;
  std::string rationale;

  friend bool operator==(const DimensionEntry&, const DimensionEntry&) = default;
};

struct JudgeVerdict {
  std::optional<double> confidence;
  std::array<DimensionEntry, kNumDimensions> entries;
  std::vector<FaithfulnessIssue> issues;

  friend bool operator==(const JudgeVerdict&, const JudgeVerdict&) = default;
};

struct Rejection {
  ReasonCode code;
  std::string detail;
};

class ParseResult {
 public:
  ParseResult(JudgeVerdict v) : value_(std::move(v)) {}
  ParseResult(Rejection r) : value_(std::move(r)) {}

  bool ok() const { return std::holds_alternative<JudgeVerdict>(value_); }
  const JudgeVerdict& verdict() const { return std::get<JudgeVerdict>(value_); }
  const Rejection& rejection() const { return std::get<Rejection>(value_); }

 private:
  std::variant<JudgeVerdict, Rejection> value_;
};

struct ParseOptions {
  // Strip one surrounding markdown code fence before parsing.
  bool repair_fences = false;
};

// Validates in schema order (confidence, informativeness, clarity,
// plausibility, faithfulness score / rationale / issues); the first failure
// wins. Spans are checked for ellipsis, then length, then that they are a
// verbatim substring of `candidate`.
ParseResult parse_verdict(std::string_view raw, std::string_view candidate,
                          const prompts::PromptTemplate& tmpl,
                          ParseOptions options = {});

// "..." or U+2026 anywhere in the text.
bool has_ellipsis(std::string_view text);

// Canonical JSON with the judge schema layout.
Json to_json(const JudgeVerdict& v);
std::string serialize(const JudgeVerdict& v);

// Reads a verdict back from a stored verdict file entry without revalidating
// spans (the candidate is not available there).
JudgeVerdict from_stored_json(const Json& j);

ScoreVector verdict_to_scores(const JudgeVerdict& v);

}  // namespace omniscore::verdict
