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

#include "doctest.h"
#include "omniscore/agreement.hpp"
#include "omniscore/synthetic.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::agreement;

namespace {

double rwg(std::vector<int> x) { return rwg_item(x); }

RatingItem item(std::vector<RatingQuad> ratings, std::string group = "g") {
  return {"id", std::move(ratings), {std::move(group)}};
}

}  // namespace

TEST_CASE("hand-computed agreement values") {
  CHECK(rwg({4, 4}) == 1.0);
  CHECK(rwg({1, 5}) == 0.0);
  CHECK(rwg({3, 4}) == 0.9375);
  CHECK(rwg({1, 1, 5, 5}) == 0.0);
  CHECK(rwg({2, 3, 4}) == doctest::Approx(1.0 - (2.0 / 3.0) / 4.0));
  CHECK(rwg({5, 5, 5, 5, 5}) == 1.0);
}

TEST_CASE("agreement equals the pairwise-difference oracle on random items") {
  Rng rng(77);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t k = 2 + rng.below(9);
    std::vector<int> x(k);
    for (auto& v : x) v = 1 + static_cast<int>(rng.below(5));
    CAPTURE(trial);
    CHECK(rwg_item(x) == testing::oracle_rwg(x, 1, 5));
  }
}

TEST_CASE("agreement properties") {
  Rng rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + rng.below(7);
    std::vector<int> x(k);
    for (auto& v : x) v = 1 + static_cast<int>(rng.below(5));
    const double r = rwg_item(x);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);

    // Permutation invariance, bit for bit.
    auto y = x;
    rng.shuffle(std::span<int>(y));
    CHECK(rwg_item(y) == r);

    // Shift invariance while the ratings stay on the scale.
    const int lo = *std::min_element(x.begin(), x.end());
    const int hi = *std::max_element(x.begin(), x.end());
    if (hi < 5) {
      auto z = x;
      for (auto& v : z) ++v;
      CHECK(rwg_item(z) == r);
    }
    // Mirror invariance.
    auto m = x;
    for (auto& v : m) v = 6 - v;
    CHECK(rwg_item(m) == r);
    // Perfect agreement exactly when all ratings are equal.
    CHECK((r == 1.0) == (lo == hi));
  }
}

TEST_CASE("invalid rating items are rejected") {
  CHECK_THROWS_AS(check_item(item({{1, 2, 3, 4}})), Error);
  CHECK_THROWS_AS(check_item(item({{1, 2, 3, 4}, {1, 2, 3, 6}})), Error);
  CHECK_THROWS_AS(check_item(item({{0, 2, 3, 4}, {1, 2, 3, 4}})), Error);
  CHECK_NOTHROW(check_item(item({{1, 2, 3, 4}, {5, 5, 5, 5}})));
}

TEST_CASE("gold is the per-dimension rater mean") {
  CHECK(gold_from_ratings(item({{4, 3, 5, 1}, {5, 3, 4, 2}})) ==
        ScoreVector(4.5, 3.0, 4.5, 1.5));
  CHECK(gold_from_ratings(item({{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}})) ==
        ScoreVector(2, 2, 2, 2));
}

TEST_CASE("group aggregation is the unweighted item mean") {
  const std::vector<RatingItem> items = {
      item({{4, 4, 1, 3}, {4, 4, 5, 4}}, "a"),
      item({{3, 3, 3, 3}, {4, 4, 4, 4}}, "a"),
      item({{1, 1, 1, 1}, {5, 5, 5, 5}}, "b"),
  };
  const auto reports = rwg_group(items);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].group == std::vector<std::string>{"a"});
  CHECK(reports[0].n == 2);
  CHECK(reports[0].rwg[0] == (1.0 + 0.9375) / 2.0);
  CHECK(reports[0].rwg[2] == (0.0 + 0.9375) / 2.0);
  CHECK(reports[0].overall ==
        doctest::Approx((reports[0].rwg[0] + reports[0].rwg[1] + reports[0].rwg[2] +
                         reports[0].rwg[3]) / 4.0));
  CHECK(reports[1].overall == 0.0);
}

TEST_CASE("planted corpus ratings agree well and reproduce stored gold") {
  const auto corpus = synthetic::planted_corpus({.size = 600, .seed = 4});
  std::size_t skipped = 99;
  const auto items =
      items_from_corpus(corpus, corpus::GroupAxis::kSourceTask, &skipped);
  CHECK(skipped == 0);
  CHECK(items.size() == corpus.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(gold_from_ratings(items[i]) == *corpus[i].gold);
  }
  for (const auto& r : rwg_group(items)) {
    // Two raters never differ by more than one point: each item is >= 0.875.
    for (double v : r.rwg) CHECK(v >= 0.875);
  }
  const auto table = reports_table(rwg_group(items), corpus::GroupAxis::kSourceTask);
  CHECK(table.find("Overall") != std::string::npos);
}
