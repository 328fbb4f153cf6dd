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

#include "omniscore/verdict.hpp"

#include <cmath>

#include "omniscore/utf8.hpp"

namespace omniscore::verdict {

namespace {

constexpr std::array<std::string_view, 11> kReasonNames = {
    "not_json",           "missing_field",     "score_out_of_range",
    "score_not_integer",  "bad_issue_type",    "span_not_substring",
    "span_too_long",      "span_has_ellipsis", "too_many_issues",
    "confidence_out_of_range", "extra_markdown"};

constexpr std::array<std::string_view, 4> kIssueNames = {
    "hallucination", "distortion", "contradiction", "unsupported_specificity"};

constexpr std::string_view kFence = "```";

std::string_view trim(std::string_view s) {
  const auto is_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with(std::string_view s, std::string_view p) {
  return s.substr(0, p.size()) == p;
}
bool ends_with(std::string_view s, std::string_view p) {
  return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

// One leading fence line (with optional info string) and one trailing fence.
std::string_view strip_fence(std::string_view s) {
  if (starts_with(s, kFence)) {
    const std::size_t nl = s.find('\n');
    s = nl == std::string_view::npos ? s.substr(kFence.size())
                                     : s.substr(nl + 1);
    s = trim(s);
  }
  if (ends_with(s, kFence)) {
    s.remove_suffix(kFence.size());
    s = trim(s);
  }
  return s;
}

Rejection reject(ReasonCode code, std::string detail) {
  return Rejection{code, std::move(detail)};
}

// Thrown internally to unwind on the first failure.
struct Fail {
  Rejection rejection;
};

[[noreturn]] void fail(ReasonCode code, std::string detail) {
  throw Fail{reject(code, std::move(detail))};
}

const Json& field(const Json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) fail(ReasonCode::kMissingField, path + " is not an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(ReasonCode::kMissingField, "missing " + path + key);
  return *it;
}

int parse_score(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(ReasonCode::kScoreNotInteger, path + " is not a number");
  if (!v.is_number_integer()) {
    fail(ReasonCode::kScoreNotInteger, path + " is not an integer");
  }
  const long long s = v.is_number_unsigned()
                          ? static_cast<long long>(std::min<std::uint64_t>(
                                v.get<std::uint64_t>(), 1000))
                          : v.get<long long>();
  if (s < 1 || s > 5) {
    fail(ReasonCode::kScoreOutOfRange, path + " = " + std::to_string(s));
  }
  return static_cast<int>(s);
}

std::string parse_rationale(const Json& entry, const std::string& path) {
  const Json& r = field(entry, "rationale", path);
  if (!r.is_string() || r.get_ref<const std::string&>().empty()) {
    fail(ReasonCode::kMissingField, path + "rationale is empty or not a string");
  }
  return r.get<std::string>();
}

FaithfulnessIssue parse_issue(const Json& item, std::size_t index,
                              std::string_view candidate) {
  const std::string path = "faithfulness.issues[" + std::to_string(index) + "].";
  if (!item.is_object()) {
    fail(ReasonCode::kMissingField, path.substr(0, path.size() - 1) +
                                        " is not an object");
  }
  const Json& type = field(item, "type", path);
  std::optional<IssueKind> kind;
  if (type.is_string()) kind = parse_issue_kind(type.get<std::string>());
  if (!kind) fail(ReasonCode::kBadIssueType, path + "type = " + type.dump());

  const Json& span_json = field(item, "text_span", path);
  if (!span_json.is_string()) {
    fail(ReasonCode::kMissingField, path + "text_span is not a string");
  }
  std::string span = span_json.get<std::string>();
  if (has_ellipsis(span)) fail(ReasonCode::kSpanHasEllipsis, path + "text_span");
  const std::size_t words = utf8::count_words(span);
  if (words > kMaxSpanWords) {
    fail(ReasonCode::kSpanTooLong,
         path + "text_span has " + std::to_string(words) + " words");
  }
  if (span.empty() || candidate.find(span) == std::string_view::npos) {
    fail(ReasonCode::kSpanNotSubstring,
         path + "text_span is not a verbatim candidate substring");
  }
  return FaithfulnessIssue{*kind, std::move(span)};
}

JudgeVerdict parse_object(const Json& root, std::string_view candidate,
                          const prompts::PromptTemplate& tmpl) {
  JudgeVerdict v;
  const auto conf = root.find("confidence");
  if (conf != root.end()) {
    if (!conf->is_number()) {
      fail(ReasonCode::kConfidenceOutOfRange, "confidence is not a number");
    }
    const double c = conf->get<double>();
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      fail(ReasonCode::kConfidenceOutOfRange, "confidence = " + conf->dump());
    }
    v.confidence = c;
  } else if (tmpl.confidence_required) {
    fail(ReasonCode::kMissingField, "missing confidence");
  }

  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const std::string key(dimension_key(d));
    const Json& entry = field(root, key, "");
    const std::string path = key + ".";
    v.entries[d].score = parse_score(field(entry, "score", path), key + ".score");
    v.entries[d].rationale = parse_rationale(entry, path);
    if (static_cast<Dimension>(d) == Dimension::kFaithfulness) {
      const Json& issues = field(entry, "issues", path);
      if (!issues.is_array()) {
        fail(ReasonCode::kMissingField, "faithfulness.issues is not an array");
      }
      if (issues.size() > kMaxIssues) {
        fail(ReasonCode::kTooManyIssues,
             std::to_string(issues.size()) + " issues");
      }
      for (std::size_t i = 0; i < issues.size(); ++i) {
        v.issues.push_back(parse_issue(issues[i], i, candidate));
      }
    }
  }
  return v;
}

}  // namespace

std::string_view to_string(ReasonCode code) {
  return kReasonNames.at(static_cast<std::size_t>(code));
}

std::optional<ReasonCode> parse_reason(std::string_view text) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == text) return static_cast<ReasonCode>(i);
  }
  return std::nullopt;
}

std::string_view to_string(IssueKind kind) {
  return kIssueNames.at(static_cast<std::size_t>(kind));
}

std::optional<IssueKind> parse_issue_kind(std::string_view text) {
  for (std::size_t i = 0; i < kIssueNames.size(); ++i) {
    if (kIssueNames[i] == text) return static_cast<IssueKind>(i);
  }
  return std::nullopt;
}

bool has_ellipsis(std::string_view text) {
  return text.find("...") != std::string_view::npos ||
         text.find("\xE2\x80\xA6") != std::string_view::npos;
}

ParseResult parse_verdict(std::string_view raw, std::string_view candidate,
                          const prompts::PromptTemplate& tmpl,
                          ParseOptions options) {
  std::string_view text = trim(raw);
  if (options.repair_fences) text = strip_fence(text);
  if (starts_with(text, kFence) || ends_with(text, kFence)) {
    return reject(ReasonCode::kExtraMarkdown, "markdown code fence");
  }

  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    // JSON object wrapped in prose counts as extra text, not broken JSON.
    const std::size_t open = text.find('{');
    const std::size_t close = text.rfind('}');
    if (open != std::string_view::npos && close != std::string_view::npos &&
        close > open && (open > 0 || close + 1 < text.size()) &&
        Json::accept(text.substr(open, close - open + 1))) {
      return reject(ReasonCode::kExtraMarkdown, "text around the JSON object");
    }
    return reject(ReasonCode::kNotJson, "response is not valid JSON");
  }
  if (!root.is_object()) {
    return reject(ReasonCode::kNotJson, "top-level value is not an object");
  }
  try {
    return parse_object(root, candidate, tmpl);
  } catch (const Fail& f) {
    return f.rejection;
  }
}

Json to_json(const JudgeVerdict& v) {
  Json j;
  if (v.confidence) j["confidence"] = *v.confidence;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    Json entry;
    entry["score"] = v.entries[d].score;
    entry["rationale"] = v.entries[d].rationale;
    if (static_cast<Dimension>(d) == Dimension::kFaithfulness) {
      Json issues = Json::array();
      for (const auto& issue : v.issues) {
        issues.push_back({{"type", std::string(to_string(issue.kind))},
                          {"text_span", issue.text_span}});
      }
      entry["issues"] = std::move(issues);
    }
    j[std::string(dimension_key(d))] = std::move(entry);
  }
  return j;
}

std::string serialize(const JudgeVerdict& v) { return to_json(v).dump(); }

JudgeVerdict from_stored_json(const Json& j) {
  JudgeVerdict v;
  if (j.contains("confidence")) v.confidence = j.at("confidence").get<double>();
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const Json& entry = j.at(std::string(dimension_key(d)));
    v.entries[d].score = entry.at("score").get<int>();
    v.entries[d].rationale = entry.at("rationale").get<std::string>();
  }
  for (const auto& issue : j.at("faithfulness").at("issues")) {
    const auto kind = parse_issue_kind(issue.at("type").get<std::string>());
    if (!kind) throw ValidationError("stored verdict: bad issue type");
    v.issues.push_back({*kind, issue.at("text_span").get<std::string>()});
  }
  return v;
}

ScoreVector verdict_to_scores(const JudgeVerdict& v) {
  ScoreVector s;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    s[d] = static_cast<double>(v.entries[d].score);
  }
  return s;
}

}  // namespace omniscore::verdict
