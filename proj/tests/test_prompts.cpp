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

#include <set>

#include "doctest.h"
#include "omniscore/corpus.hpp"
#include "omniscore/io.hpp"
#include "omniscore/prompts.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::prompts;
using testing::fixture;

namespace {

struct Golden {
  const char* stem;
  TemplateId id;
  std::vector<std::string> headers;
};

const std::vector<Golden>& goldens() {
  static const std::vector<Golden> g = {
      {"nq", TemplateId::kNaturalQuestions, {"QUERY:", "CANDIDATE ANSWER:"}},
      {"multinativqa", TemplateId::kMultiNativQA, {"QUESTION:", "ANSWER:"}},
      {"summarization", TemplateId::kSummarization,
       {"TITLE:", "SOURCE TEXT:", "CANDIDATE SUMMARY:"}},
      {"headline", TemplateId::kHeadline, {"ARTICLE TEXT:", "CANDIDATE HEADLINE:"}},
      {"paraphrase", TemplateId::kParaphrase, {"SOURCE TEXT:", "CANDIDATE PARAPHRASE:"}},
      {"mt", TemplateId::kTranslation, {"TARGET LANGUAGE:", "TRANSLATION:"}},
      {"wildchat", TemplateId::kWildChat, {"USER MESSAGE:"}},
  };
  return g;
}

EvaluationInstance load_instance(const std::string& stem) {
  return corpus::from_json(
      Json::parse(testing::slurp(fixture("prompts/" + stem + ".instance.json"))));
}

}  // namespace

TEST_CASE("rendered prompts match the golden files byte for byte") {
  for (const auto& g : goldens()) {
    CAPTURE(g.stem);
    const auto inst = load_instance(g.stem);
    CHECK(select_template(inst.task, inst.source_dataset) == g.id);
    const Prompt p = build_prompt(inst);
    CHECK(p.system == testing::slurp(fixture(std::string("prompts/") + g.stem + ".system.txt")));
    CHECK(p.user == testing::slurp(fixture(std::string("prompts/") + g.stem + ".user.txt")));
    for (const auto& h : g.headers) {
      CHECK(p.user.find(h + "\n") != std::string::npos);
    }
  }
}

TEST_CASE("values containing placeholder syntax are inserted verbatim") {
  const auto inst = load_instance("nq");
  const Prompt p = build_prompt(inst);
  CHECK(p.user.find("QUERY:\nWho wrote {answer} in 1999?") != std::string::npos);
  CHECK(p.user.find("A. The {{author}} did.") != std::string::npos);
}

TEST_CASE("registry is internally consistent") {
  std::set<std::string> names;
  for (TemplateId id : kAllTemplates) {
    const auto& t = get_template(id);
    CAPTURE(t.name);
    CHECK(t.id == id);
    CHECK(names.insert(t.name).second);
    auto parsed = parse_placeholders(t.user_text_template);
    std::sort(parsed.begin(), parsed.end());
    CHECK(parsed == t.required_placeholders);
    std::set<std::string> bound{t.candidate_placeholder};
    for (const auto& [ph, field] : t.input_bindings) bound.insert(ph);
    CHECK(std::vector<std::string>(bound.begin(), bound.end()) == t.required_placeholders);
    CHECK_FALSE(t.system_text.empty());
  }
}

TEST_CASE("QA variant follows the source dataset") {
  CHECK(select_template(TaskKind::kQA, "MultiNativQA") == TemplateId::kMultiNativQA);
  CHECK(select_template(TaskKind::kQA, "NQ") == TemplateId::kNaturalQuestions);
  CHECK(select_template(TaskKind::kQA, "anything") == TemplateId::kNaturalQuestions);
  CHECK(select_template(TaskKind::kMT, "FLORES") == TemplateId::kTranslation);
}

TEST_CASE("missing input field is a validation error naming the field") {
  auto inst = load_instance("summarization");
  inst.inputs.erase("title");
  try {
    build_prompt(inst);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    CHECK(std::string(e.what()).find("\"title\"") != std::string::npos);
  }
}

TEST_CASE("render rejects missing, unused and malformed placeholders") {
  CHECK(render("a {x} b", {{"x", "1"}}) == "a 1 b");
  CHECK(render("{{x}} {x}", {{"x", "{y}"}}) == "{x} {y}");
  CHECK_THROWS_AS(render("{x}", {}), Error);
  CHECK_THROWS_AS(render("{x}", {{"x", "1"}, {"y", "2"}}), Error);
  CHECK_THROWS_AS(render("a { b", {}), Error);
  CHECK_THROWS_AS(render("a } b", {}), Error);
  CHECK_THROWS_AS(render("{x-y}", {{"x-y", ""}}), Error);
  CHECK_THROWS_AS(render("{x", {{"x", ""}}), Error);
}

TEST_CASE("placeholder scan reports first-appearance order without duplicates") {
  CHECK(parse_placeholders("{b} {a} {b} {{c}}") == std::vector<std::string>{"b", "a"});
  CHECK(parse_placeholders("no braces").empty());
}

TEST_CASE("prompt construction is deterministic") {
  for (const auto& g : goldens()) {
    const auto inst = load_instance(g.stem);
    const auto a = build_prompt(inst);
    const auto b = build_prompt(inst);
    CHECK(io::sha256_hex(a.system + a.user) == io::sha256_hex(b.system + b.user));
  }
}

TEST_CASE("random values never leak template syntax into structure") {
  Rng rng(3);
  const std::string alphabet = "ab{}\n \xe0\xa6\x95";
  for (int trial = 0; trial < 500; ++trial) {
    std::string v;
    const auto len = rng.below(20);
    for (std::uint64_t i = 0; i < len; ++i) v += alphabet[rng.below(alphabet.size())];
    const std::string out = render("<{v}>", {{"v", v}});
    CHECK(out == "<" + v + ">");
  }
}
