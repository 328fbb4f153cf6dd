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

#include <functional>
#include <set>

#include "doctest.h"
#include "omniscore/prompts.hpp"
#include "omniscore/utf8.hpp"
#include "omniscore/verdict.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::verdict;

namespace {

const std::string kCandidate =
    "Rabindranath Tagore wrote the national anthem of Bangladesh in 1905.";

const prompts::PromptTemplate& nq() {
  return prompts::get_template(prompts::TemplateId::kNaturalQuestions);
}

Json valid_json() {
  return Json::parse(R"({
    "confidence": 0.8,
    "informativeness": {"score": 4, "rationale": "Direct answer."},
    "clarity": {"score": 5, "rationale": "Clear."},
    "plausibility": {"score": 4, "rationale": "Plausible."},
    "faithfulness": {"score": 3, "rationale": "Year is off.",
      "issues": [{"type": "distortion", "text_span": "in 1905"}]}
  })");
}

ParseResult parse(const std::string& raw, ParseOptions opt = {}) {
  return parse_verdict(raw, kCandidate, nq(), opt);
}

ReasonCode code_of(const std::string& raw) {
  const auto r = parse(raw);
  REQUIRE_FALSE(r.ok());
  return r.rejection().code;
}

ReasonCode mutated(const std::function<void(Json&)>& f) {
  Json j = valid_json();
  f(j);
  return code_of(j.dump());
}

Json issue(const std::string& type, const std::string& span) {
  return {{"type", type}, {"text_span", span}};
}

}  // namespace

TEST_CASE("well-formed verdict parses") {
  const auto r = parse(valid_json().dump(2));
  REQUIRE(r.ok());
  const auto& v = r.verdict();
  CHECK(v.confidence == 0.8);
  CHECK(v.entries[0].score == 4);
  CHECK(v.entries[3].rationale == "Year is off.");
  REQUIRE(v.issues.size() == 1);
  CHECK(v.issues[0].kind == IssueKind::kDistortion);
  CHECK(verdict_to_scores(v) == ScoreVector(4, 5, 4, 3));
}

TEST_CASE("each malformed response maps to its reason code") {
  CHECK(code_of("not json at all") == ReasonCode::kNotJson);
  CHECK(code_of("[1, 2]") == ReasonCode::kNotJson);
  CHECK(mutated([](Json& j) { j.erase("clarity"); }) == ReasonCode::kMissingField);
  CHECK(mutated([](Json& j) { j["faithfulness"].erase("issues"); }) ==
        ReasonCode::kMissingField);
  CHECK(mutated([](Json& j) { j["plausibility"]["score"] = 6; }) ==
        ReasonCode::kScoreOutOfRange);
  CHECK(mutated([](Json& j) { j["clarity"]["score"] = 3.5; }) ==
        ReasonCode::kScoreNotInteger);
  CHECK(mutated([](Json& j) {
          j["faithfulness"]["issues"][0]["type"] = "omission";
        }) == ReasonCode::kBadIssueType);
  CHECK(mutated([](Json& j) {
          j["faithfulness"]["issues"][0]["text_span"] = "in 1913";
        }) == ReasonCode::kSpanNotSubstring);
  CHECK(mutated([](Json& j) {
          std::string s;
          for (int i = 0; i < 26; ++i) s += "w ";
          j["faithfulness"]["issues"][0]["text_span"] = s;
        }) == ReasonCode::kSpanTooLong);
  CHECK(mutated([](Json& j) {
          j["faithfulness"]["issues"][0]["text_span"] = "Tagore wrote...";
        }) == ReasonCode::kSpanHasEllipsis);
  CHECK(mutated([](Json& j) {
          for (int i = 0; i < 6; ++i) {
            j["faithfulness"]["issues"].push_back(issue("hallucination", "1905"));
          }
        }) == ReasonCode::kTooManyIssues);
  CHECK(mutated([](Json& j) { j["confidence"] = 1.5; }) ==
        ReasonCode::kConfidenceOutOfRange);
  CHECK(code_of("```json\n" + valid_json().dump() + "\n```") ==
        ReasonCode::kExtraMarkdown);
}

TEST_CASE("reason codes have stable names") {
  for (ReasonCode c : kAllReasonCodes) CHECK(parse_reason(to_string(c)) == c);
  CHECK(to_string(ReasonCode::kSpanNotSubstring) == "span_not_substring");
  CHECK(to_string(ReasonCode::kExtraMarkdown) == "extra_markdown");
  CHECK_FALSE(parse_reason("unknown"));
}

TEST_CASE("span edge cases") {
  SUBCASE("exactly 25 words is accepted") {
    std::string cand, span;
    for (int i = 0; i < 25; ++i) span += (i ? " w" : "w") + std::to_string(i);
    cand = "x " + span + " y";
    Json j = valid_json();
    j["faithfulness"]["issues"][0]["text_span"] = span;
    CHECK(parse_verdict(j.dump(), cand, nq()).ok());
  }
  SUBCASE("unicode ellipsis is rejected") {
    CHECK(mutated([](Json& j) {
            j["faithfulness"]["issues"][0]["text_span"] = "wrote\xE2\x80\xA6";
          }) == ReasonCode::kSpanHasEllipsis);
  }
  SUBCASE("whole candidate is a valid span") {
    Json j = valid_json();
    j["faithfulness"]["issues"][0]["text_span"] = kCandidate;
    CHECK(parse(j.dump()).ok());
  }
  SUBCASE("empty issue list is accepted") {
    Json j = valid_json();
    j["faithfulness"]["issues"] = Json::array();
    CHECK(parse(j.dump()).ok());
  }
  SUBCASE("six issues are accepted") {
    Json j = valid_json();
    for (int i = 0; i < 5; ++i) {
      j["faithfulness"]["issues"].push_back(issue("contradiction", "Tagore"));
    }
    CHECK(parse(j.dump()).ok());
  }
}

TEST_CASE("fence repair is opt-in") {
  const std::string fenced = "```json\n" + valid_json().dump() + "\n```";
  CHECK_FALSE(parse(fenced).ok());
  const auto r = parse(fenced, {.repair_fences = true});
  CHECK(r.ok());
  CHECK(code_of("Here you go: " + valid_json().dump()) == ReasonCode::kExtraMarkdown);
}

TEST_CASE("confidence bounds") {
  CHECK(mutated([](Json& j) { j["confidence"] = -0.01; }) ==
        ReasonCode::kConfidenceOutOfRange);
  CHECK(mutated([](Json& j) { j["confidence"] = "high"; }) ==
        ReasonCode::kConfidenceOutOfRange);
  CHECK(mutated([](Json& j) { j.erase("confidence"); }) == ReasonCode::kMissingField);
  Json j = valid_json();
  j["confidence"] = 0;
  CHECK(parse(j.dump()).ok());
  j["confidence"] = 1;
  CHECK(parse(j.dump()).ok());
}

TEST_CASE("random valid verdicts round-trip through serialization") {
  Rng rng(2024);
  const std::string cand =
      "\xe0\xa6\xa2\xe0\xa6\xbe\xe0\xa6\x95\xe0\xa6\xbe is the capital and the "
      "largest city of the country with about ten million people";
  std::vector<std::string> words;
  {
    std::istringstream in(cand);
    for (std::string w; in >> w;) words.push_back(w);
  }
  for (int trial = 0; trial < 1000; ++trial) {
    JudgeVerdict v;
    v.confidence = static_cast<double>(rng.below(1001)) / 1000.0;
    for (auto& e : v.entries) {
      e.score = 1 + static_cast<int>(rng.below(5));
      e.rationale = "r" + std::to_string(rng.below(100)) + " \"quoted\" {x}";
    }
    const auto n = rng.below(kMaxIssues + 1);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto a = rng.below(words.size());
      const auto len = 1 + rng.below(std::min<std::size_t>(5, words.size() - a));
      std::string span;
      for (std::size_t w = a; w < a + len; ++w) span += (w > a ? " " : "") + words[w];
      v.issues.push_back({static_cast<IssueKind>(rng.below(4)), span});
    }
    const auto r = parse_verdict(serialize(v), cand, nq());
    REQUIRE(r.ok());
    CHECK(r.verdict() == v);
    CHECK(from_stored_json(to_json(v)) == v);
    for (const auto& is : r.verdict().issues) {
      CHECK(cand.find(is.text_span) != std::string::npos);
      CHECK(utf8::count_words(is.text_span) <= kMaxSpanWords);
      CHECK_FALSE(has_ellipsis(is.text_span));
    }
  }
}

TEST_CASE("mutated verdict fixtures yield their intended reason codes") {
  std::ifstream in(testing::fixture("verdicts/mutated.jsonl"));
  std::set<std::string> codes;
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    const Json c = Json::parse(line);
    CAPTURE(c["case"].get<std::string>());
    const auto r = parse_verdict(c["raw"].get<std::string>(),
                                 c["candidate"].get<std::string>(), nq());
    REQUIRE_FALSE(r.ok());
    CHECK(to_string(r.rejection().code) == c["expected"].get<std::string>());
    codes.insert(c["expected"].get<std::string>());
    ++n;
  }
  CHECK(n == 12);
  CHECK(codes.size() == kAllReasonCodes.size());
  const Json v = Json::parse(testing::slurp(testing::fixture("verdicts/valid.json")));
  CHECK(parse_verdict(v["raw"].get<std::string>(), v["candidate"].get<std::string>(), nq()).ok());
}
