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

#include <sstream>

#include "doctest.h"
#include "omniscore/corpus.hpp"
#include "omniscore/synthetic.hpp"
#include "omniscore/table.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::corpus;
using testing::fixture;

namespace {

EvaluationInstance basic(const std::string& id, TaskKind task, Split split) {
  EvaluationInstance inst;
  inst.id = id;
  inst.task = task;
  inst.language = "en";
  inst.split = split;
  inst.source_dataset = task == TaskKind::kChat ? "WildChat" : "src";
  switch (task) {
    case TaskKind::kQA: inst.inputs = {{"question", "q"}}; break;
    case TaskKind::kMT:
      inst.inputs = {{"src_lang", "en"}, {"tar_lang", "bn"}, {"source_text", "s"}};
      break;
    case TaskKind::kSummarization:
      inst.inputs = {{"title", "t"}, {"source_text", "s"}};
      break;
    case TaskKind::kHeadline: inst.inputs = {{"article_text", "a"}}; break;
    case TaskKind::kParaphrase: inst.inputs = {{"source_text", "s"}}; break;
    case TaskKind::kChat: inst.inputs = {{"user_message", "u"}}; break;
  }
  inst.candidate = "c";
  return inst;
}

IngestResult ingest_text(const std::string& text, IngestMode mode) {
  std::istringstream in(text);
  return ingest(in, mode);
}

std::string expect_strict_error(const std::string& text) {
  try {
    ingest_text(text, IngestMode::kStrict);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kValidation);
    return e.what();
  }
  FAIL("expected a validation error");
  return {};
}

}  // namespace

TEST_CASE("task and split names parse exactly") {
  for (TaskKind t : kAllTasks) CHECK(parse_task(to_string(t)) == t);
  CHECK_FALSE(parse_task("qa"));
  CHECK_FALSE(parse_task("Translation"));
  CHECK_FALSE(parse_task(""));
  for (Split s : kAllSplits) CHECK(parse_split(to_string(s)) == s);
  CHECK_FALSE(parse_split("Train"));
}

TEST_CASE("a single well-formed QA line ingests to one instance") {
  const std::string line =
      R"({"id":"x","task":"QA","language":"en","split":"train","source_dataset":"NQ",)"
      R"("inputs":{"question":"Q?"},"candidate":"A.","gold":null,"raw_ratings":null})";
  const auto r = ingest_text(line + "\n", IngestMode::kStrict);
  REQUIRE(r.instances.size() == 1);
  CHECK(r.instances[0].id == "x");
  CHECK(r.instances[0].task == TaskKind::kQA);
  CHECK(r.instances[0].inputs.at("question") == "Q?");
  CHECK_FALSE(r.instances[0].gold);
}

TEST_CASE("fixture corpus ingests and round-trips through emit") {
  const auto r = ingest(fixture("corpus/valid.jsonl"), IngestMode::kStrict);
  REQUIRE(r.instances.size() == 7);
  CHECK(r.skipped == 0);
  testing::ScratchDir dir("corpus");
  emit(r.instances, dir / "out.jsonl");
  const auto again = ingest(dir / "out.jsonl", IngestMode::kStrict);
  CHECK(again.instances == r.instances);
  // Canonical output is a fixed point.
  CHECK(emit_string(again.instances) == testing::slurp(dir / "out.jsonl"));
}

TEST_CASE("Bengali and Arabic text survives the round trip byte for byte") {
  const auto r = ingest(fixture("corpus/valid.jsonl"), IngestMode::kStrict);
  const auto& bn = r.instances[1];
  CHECK(bn.candidate == "\xe0\xa6\xa2\xe0\xa6\xbe\xe0\xa6\x95\xe0\xa6\xbe "
                        "\xe0\xa6\xac\xe0\xa6\xbe\xe0\xa6\x82\xe0\xa6\xb2\xe0\xa6\xbe"
                        "\xe0\xa6\xa6\xe0\xa7\x87\xe0\xa6\xb6\xe0\xa7\x87\xe0\xa6\xb0 "
                        "\xe0\xa6\xb0\xe0\xa6\xbe\xe0\xa6\x9c\xe0\xa6\xa7\xe0\xa6\xbe"
                        "\xe0\xa6\xa8\xe0\xa7\x80\xe0\xa5\xa4");
  const auto back = ingest_text(emit_string(r.instances), IngestMode::kStrict);
  CHECK(back.instances[1].candidate == bn.candidate);
  CHECK(back.instances[3].inputs == r.instances[3].inputs);
}

TEST_CASE("empty list emits an empty file") {
  testing::ScratchDir dir("empty");
  emit(std::vector<EvaluationInstance>{}, dir / "e.jsonl");
  CHECK(testing::slurp(dir / "e.jsonl").empty());
  CHECK(ingest(dir / "e.jsonl", IngestMode::kStrict).instances.empty());
}

TEST_CASE("strict ingest names the line and field of a bad rating") {
  try {
    ingest(fixture("corpus/rating_six.jsonl"), IngestMode::kStrict);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 1") != std::string::npos);
    CHECK(msg.find("raw_ratings[0][2]") != std::string::npos);
  }
}

TEST_CASE("lenient ingest skips the corrupt middle line") {
  const auto r = ingest(fixture("corpus/middle_corrupt.jsonl"), IngestMode::kLenient);
  CHECK(r.instances.size() == 2);
  CHECK(r.skipped == 1);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].line == 2);
}

TEST_CASE("schema violations are rejected with their field") {
  const std::string ok =
      R"({"id":"x","task":"QA","language":"en","split":"train","source_dataset":"NQ",)"
      R"("inputs":{"question":"Q?"},"candidate":"A.","gold":null,"raw_ratings":null})";
  CHECK(ingest_text(ok, IngestMode::kStrict).instances.size() == 1);

  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = ok;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    s.replace(pos, from.size(), to);
    return expect_strict_error(s);
  };
  CHECK(mutate(R"("task":"QA")", R"("task":"Dialog")").find("task") != std::string::npos);
  CHECK(mutate(R"("candidate":"A.")", R"("candidate":"")").find("candidate") !=
        std::string::npos);
  CHECK(mutate(R"("inputs":{"question":"Q?"})", R"("inputs":{})").find("inputs.question") !=
        std::string::npos);
  CHECK(mutate(R"("gold":null)", R"("gold":{"informativeness":5.5,"clarity":1,"plausibility":1,"faithfulness":1})")
            .find("gold.informativeness") != std::string::npos);
  CHECK(mutate(R"("raw_ratings":null)", R"("raw_ratings":[[1,2,3,2.5]])")
            .find("raw_ratings[0][3]") != std::string::npos);
  CHECK(mutate(R"("split":"train")", R"("split":"validation")").find("split") !=
        std::string::npos);
  CHECK(mutate(R"("id":"x",)", R"("id":"x","extra":1,)").find("extra") != std::string::npos);
  CHECK(mutate(R"("language":"en",)", "").find("language") != std::string::npos);
  CHECK(expect_strict_error(ok + "\n" + ok).find("duplicate") != std::string::npos);
  CHECK(expect_strict_error("not json").find("line 1") != std::string::npos);
}

TEST_CASE("generated records: ingest rejects exactly the invalid ones") {
  Rng rng(11);
  std::string text;
  std::size_t planted = 0;
  const auto base = synthetic::planted_corpus({.size = 300, .seed = 5});
  for (const auto& inst : base) {
    Json j = to_json(inst);
    const auto kind = rng.below(5);
    if (kind == 0) {
      ++planted;
      switch (rng.below(4)) {
        case 0: j["raw_ratings"][0][rng.below(4)] = 6; break;
        case 1: j["gold"]["clarity"] = 0.5; break;
        case 2: j["task"] = "Poetry"; break;
        case 3: j.erase("candidate"); break;
      }
    }
    text += j.dump() + "\n";
  }
  const auto r = ingest_text(text, IngestMode::kLenient);
  CHECK(r.skipped == planted);
  CHECK(r.instances.size() == base.size() - planted);
  CHECK(r.diagnostics.size() == planted);
}

TEST_CASE("split percentages") {
  SUBCASE("411 of 1000 is 41.1") {
    std::vector<EvaluationInstance> v;
    for (int i = 0; i < 1000; ++i) {
      v.push_back(basic("i" + std::to_string(i), i < 411 ? TaskKind::kMT : TaskKind::kQA,
                        Split::kTrain));
    }
    const auto cells = split_stats(v);
    const auto mt = std::find_if(cells.begin(), cells.end(),
                                 [](const auto& c) { return c.task == TaskKind::kMT; });
    REQUIRE(mt != cells.end());
    CHECK(mt->count == 411);
    CHECK(format_fixed(mt->percent, 1) == "41.1");
  }
  SUBCASE("single instance is 100.0") {
    const std::vector<EvaluationInstance> v{basic("a", TaskKind::kChat, Split::kDev)};
    for (const auto& c : split_stats(v)) {
      if (c.task == TaskKind::kChat) CHECK(format_fixed(c.percent, 1) == "100.0");
      else CHECK(c.count == 0);
    }
  }
  SUBCASE("one and two items give 33.3 and 66.7") {
    const std::vector<EvaluationInstance> v{basic("a", TaskKind::kQA, Split::kTest),
                                            basic("b", TaskKind::kMT, Split::kTest),
                                            basic("c", TaskKind::kMT, Split::kTest)};
    const auto cells = split_stats(v);
    for (const auto& c : cells) {
      if (c.task == TaskKind::kQA) CHECK(format_fixed(c.percent, 1) == "33.3");
      if (c.task == TaskKind::kMT) CHECK(format_fixed(c.percent, 1) == "66.7");
    }
  }
  SUBCASE("percentages per split sum to 100 within rounding") {
    const auto v = synthetic::planted_corpus({.size = 997, .seed = 3});
    std::map<Split, double> sums;
    std::map<Split, std::size_t> counts;
    for (const auto& c : split_stats(v)) {
      sums[c.split] += std::stod(format_fixed(c.percent, 1));
      counts[c.split] += c.count;
      CHECK(c.split_total > 0);
    }
    std::size_t total = 0;
    for (const auto& [s, sum] : sums) {
      CHECK(std::abs(sum - 100.0) <= 0.1 + 1e-9);
      total += counts[s];
    }
    CHECK(total == v.size());
  }
}

TEST_CASE("dimension means") {
  SUBCASE("overall of (4.36, 4.32, 4.46, 4.41) rounds to 4.39") {
    const double overall = (4.36 + 4.32 + 4.46 + 4.41) / 4.0;
    CHECK(format_fixed(overall, 2) == "4.39");
    // Same through the grouped computation.
    std::vector<EvaluationInstance> v{basic("a", TaskKind::kMT, Split::kTest)};
    v[0].gold = ScoreVector(4.36, 4.32, 4.46, 4.41);
    const auto rows = dimension_means(v, GroupAxis::kTask);
    REQUIRE(rows.size() == 1);
    CHECK(format_fixed(*rows[0].overall, 2) == "4.39");
  }
  SUBCASE("constant gold gives 3.00 everywhere") {
    std::vector<EvaluationInstance> v{basic("a", TaskKind::kQA, Split::kTest),
                                      basic("b", TaskKind::kQA, Split::kTest)};
    for (auto& i : v) i.gold = ScoreVector(3, 3, 3, 3);
    const auto rows = dimension_means(v, GroupAxis::kTask);
    for (double m : *rows[0].means) CHECK(format_fixed(m, 2) == "3.00");
    CHECK(format_fixed(*rows[0].overall, 2) == "3.00");
  }
  SUBCASE("(1,1,1,1) and (5,5,5,5) give 3.00 with n=2") {
    std::vector<EvaluationInstance> v{basic("a", TaskKind::kQA, Split::kTest),
                                      basic("b", TaskKind::kQA, Split::kTest)};
    v[0].gold = ScoreVector(1, 1, 1, 1);
    v[1].gold = ScoreVector(5, 5, 5, 5);
    const auto rows = dimension_means(v, GroupAxis::kSplit);
    CHECK(rows[0].n == 2);
    for (double m : *rows[0].means) CHECK(m == 3.0);
  }
  SUBCASE("group without gold is reported as absent") {
    std::vector<EvaluationInstance> v{basic("a", TaskKind::kQA, Split::kTest),
                                      basic("b", TaskKind::kMT, Split::kTest)};
    v[0].gold = ScoreVector(2, 2, 2, 2);
    const auto rows = dimension_means(v, GroupAxis::kTask);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      if (r.group[0] == "MT") {
        CHECK_FALSE(r.means);
        CHECK_FALSE(r.overall);
        CHECK(r.n == 0);
      }
    }
    CHECK(dimension_means_table(rows, GroupAxis::kTask).find("-") != std::string::npos);
    CHECK(dimension_means_json(rows, GroupAxis::kTask).dump().find("null") !=
          std::string::npos);
  }
  SUBCASE("overall is exactly the mean of the four means on random data") {
    const auto v = synthetic::planted_corpus({.size = 500, .seed = 9});
    for (GroupAxis axis : {GroupAxis::kSourceDataset, GroupAxis::kTask, GroupAxis::kSplit,
                           GroupAxis::kLanguage}) {
      for (const auto& r : dimension_means(v, axis)) {
        const auto& m = *r.means;
        CHECK(*r.overall == (m[0] + m[1] + m[2] + m[3]) / 4.0);
      }
    }
  }
}

TEST_CASE("half-away rounding of reported values") {
  CHECK(format_fixed(4.3875, 2) == "4.39");
  CHECK(format_fixed(0.125, 2) == "0.13");
  CHECK(format_fixed(-0.125, 2) == "-0.13");
  CHECK(format_fixed(2.5, 0) == "3");
  CHECK(format_fixed(0.784, 2) == "0.78");
  CHECK(format_fixed(1.0, 2) == "1.00");
}
