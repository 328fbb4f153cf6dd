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

#include <numeric>
#include <set>

#include "doctest.h"
#include "omniscore/metrics.hpp"
#include "omniscore/table.hpp"
#include "test_support.hpp"

using namespace omniscore;
using namespace omniscore::metrics;

namespace {

PairedScores uniform_pairs(const std::vector<double>& pred, const std::vector<double>& gold) {
  PairedScores p;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    p.pred.emplace_back(pred[i], pred[i], pred[i], pred[i]);
    p.gold.emplace_back(gold[i], gold[i], gold[i], gold[i]);
  }
  return p;
}

PairedScores random_pairs(Rng& rng, std::size_t n) {
  PairedScores p;
  const char* langs[] = {"en", "ar", "bn", "hi"};
  const char* models[] = {"m1", "m2"};
  for (std::size_t i = 0; i < n; ++i) {
    p.gold.push_back(testing::random_scores(rng, true));
    ScoreVector pr = p.gold.back();
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      pr[d] = std::clamp(pr[d] + rng.normal() * 0.8, 1.0, 5.0);
    }
    p.pred.push_back(pr);
    p.meta.push_back({kAllTasks[rng.below(6)], langs[rng.below(4)], "src",
                      models[rng.below(2)]});
  }
  return p;
}

std::vector<double> column(const std::vector<ScoreVector>& v, DimensionSel dim) {
  std::vector<double> out;
  for (const auto& s : v) {
    if (dim) {
      out.push_back(s[*dim]);
    } else {
      for (double x : s.values) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("hand-computed series metrics") {
  const std::vector<double> p{1, 2}, g{3, 3};
  CHECK(mae(p, g) == 1.5);
  CHECK(rmse(p, g) == std::sqrt(2.5));
  CHECK(adjacent_accuracy(p, g) == 0.5);
  CHECK_FALSE(pearson(p, g));  // constant gold
  CHECK(*pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) ==
        doctest::Approx(1.0));
  CHECK(*pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) ==
        doctest::Approx(-1.0));
  CHECK_FALSE(pearson(std::vector<double>{1}, std::vector<double>{2}));
}

TEST_CASE("boundary of the adjacent-accuracy tolerance") {
  CHECK(adjacent_accuracy(std::vector<double>{4.0}, std::vector<double>{3.0}) == 1.0);
  CHECK(adjacent_accuracy(std::vector<double>{4.0000000001}, std::vector<double>{3.0}) == 1.0);
  CHECK(adjacent_accuracy(std::vector<double>{4.00001}, std::vector<double>{3.0}) == 0.0);
  CHECK(adjacent_accuracy(std::vector<double>{1.5}, std::vector<double>{2.5}) == 1.0);
}

TEST_CASE("empty or mismatched inputs are rejected") {
  CHECK_THROWS_AS(mae(std::vector<double>{}, std::vector<double>{}), Error);
  CHECK_THROWS_AS(mae(std::vector<double>{1}, std::vector<double>{1, 2}), Error);
  PairedScores bad;
  bad.pred = {ScoreVector(1, 1, 1, 1)};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("library metrics agree with brute-force oracles") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pairs = random_pairs(rng, 2 + rng.below(60));
    for (DimensionSel dim : {DimensionSel{}, DimensionSel{0}, DimensionSel{3}}) {
      const auto o = testing::oracle_metrics(column(pairs.pred, dim), column(pairs.gold, dim));
      CHECK(mae(pairs, dim) == doctest::Approx(o.mae).epsilon(1e-12));
      CHECK(rmse(pairs, dim) == doctest::Approx(o.rmse).epsilon(1e-12));
      CHECK(adjacent_accuracy(pairs, dim) == o.acc);
      if (dim) {
        const auto r = pearson(pairs, *dim);
        REQUIRE(r.has_value() == o.pearson.has_value());
        if (r) CHECK(*r == doctest::Approx(*o.pearson).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("metric properties") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pairs = random_pairs(rng, 1 + rng.below(40));
    const double m = mae(pairs), r = rmse(pairs), a = adjacent_accuracy(pairs);
    CHECK(m >= 0.0);
    CHECK(m <= r + 1e-15);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (const auto p = pearson(pairs, d)) {
        CHECK(*p >= -1.0 - 1e-12);
        CHECK(*p <= 1.0 + 1e-12);
      }
    }
    // Perfect predictions.
    PairedScores same = pairs;
    same.pred = same.gold;
    CHECK(mae(same) == 0.0);
    CHECK(rmse(same) == 0.0);
    CHECK(adjacent_accuracy(same) == 1.0);
    // Order invariance.
    std::vector<std::size_t> idx(pairs.size());
    std::iota(idx.begin(), idx.end(), 0);
    rng.shuffle(std::span<std::size_t>(idx));
    const auto shuffled = pairs.subset(idx);
    CHECK(mae(shuffled) == doctest::Approx(m).epsilon(1e-12));
    CHECK(adjacent_accuracy(shuffled) == a);
  }
}

TEST_CASE("overall cell pools dimensions and averages defined correlations") {
  Rng rng(4);
  const auto pairs = random_pairs(rng, 50);
  const auto cells = compute_cells(pairs);
  CHECK(cells.overall.n == 50);
  CHECK(cells.overall.mae == mae(pairs));
  CHECK(cells.overall.acc == adjacent_accuracy(pairs));
  std::vector<std::optional<double>> rs;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    CHECK(cells.dims[d].mae == mae(pairs, d));
    rs.push_back(cells.dims[d].pearson);
  }
  CHECK(cells.overall.pearson == mean_defined(rs));

  // One constant dimension drops out of the mean.
  auto flat = pairs;
  for (auto& g : flat.gold) g[1] = 3.0;
  const auto c2 = compute_cells(flat);
  CHECK_FALSE(c2.dims[1].pearson);
  CHECK(*c2.overall.pearson ==
        doctest::Approx((*c2.dims[0].pearson + *c2.dims[2].pearson + *c2.dims[3].pearson) / 3));
  CHECK_FALSE(mean_defined(std::vector<std::optional<double>>{std::nullopt}));
}

TEST_CASE("unweighted group average") {
  const std::vector<double> errs{0.61, 0.86, 0.66, 1.09, 0.68};
  const char* langs[] = {"ar", "bn", "de", "en", "hi"};
  PairedScores p;
  for (std::size_t i = 0; i < errs.size(); ++i) {
    // Unequal group sizes: the average must not weight by count.
    for (std::size_t k = 0; k <= i; ++k) {
      p.gold.emplace_back(2, 2, 2, 2);
      p.pred.emplace_back(2 + errs[i], 2 + errs[i], 2 - errs[i], 2 - errs[i]);
      p.meta.push_back({TaskKind::kQA, langs[i], "s", "m"});
    }
  }
  const std::vector<Axis> axes{Axis::kLanguage};
  const auto report = grouped_report(p, axes);
  REQUIRE(report.rows.size() == 6);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report.rows[i].group == langs[i]);
    CHECK(report.rows[i].cells.overall.mae == doctest::Approx(errs[i]));
  }
  const auto& avg = report.rows.back();
  CHECK(avg.average);
  CHECK(avg.group == kAverageLabel);
  CHECK(format_fixed(avg.cells.overall.mae, 2) == "0.78");

  const auto pooled = grouped_report(p, axes, AverageMode::kPooled);
  CHECK(pooled.rows.back().cells.overall.mae == doctest::Approx(mae(p)));
  CHECK(format_fixed(pooled.rows.back().cells.overall.mae, 2) != "0.78");

  const auto tables = report_tables(report);
  CHECK(tables.find("0.78") != std::string::npos);
  CHECK(tables.find("Avg.") != std::string::npos);
  const auto j = report_json(report);
  CHECK(j["rows"].size() == 6);
  CHECK(j["rows"][0]["dimensions"]["overall"].contains("acc_pm1"));
}

TEST_CASE("model axis partitions rows") {
  Rng rng(12);
  const auto pairs = random_pairs(rng, 200);
  const std::vector<Axis> axes{Axis::kModel, Axis::kTask};
  const auto report = grouped_report(pairs, axes);
  std::set<std::string> models;
  for (const auto& r : report.rows) models.insert(r.model);
  CHECK(models == std::set<std::string>{"m1", "m2"});
  const std::vector<Axis> only_model{Axis::kModel};
  const auto flat = grouped_report(pairs, only_model);
  REQUIRE(flat.rows.size() == 2);
  CHECK(flat.rows[0].group == "all");
  const std::vector<Axis> none;
  const auto all = grouped_report(pairs, none);
  REQUIRE(all.rows.size() == 1);
  CHECK(all.rows[0].cells.overall.mae == mae(pairs));
  CHECK_THROWS_AS(parse_axis("dataset"), Error);
  CHECK(parse_axes("task,language") == std::vector<Axis>{Axis::kTask, Axis::kLanguage});
}

TEST_CASE("count-weighted language MAE") {
  PairedScores p;
  for (int i = 0; i < 3; ++i) {
    p.gold.emplace_back(3, 3, 3, 3);
    p.pred.emplace_back(3, 3, 3, 3);
    p.meta.push_back({TaskKind::kQA, "en", "s", ""});
  }
  p.gold.emplace_back(1, 1, 1, 1);
  p.pred.emplace_back(3, 3, 3, 3);
  p.meta.push_back({TaskKind::kQA, "bn", "s", ""});
  CHECK(weighted_language_mae(p) == 0.5);
  CHECK(weighted_language_mae(p, 2) == 0.5);
}

TEST_CASE("efficiency arithmetic") {
  const std::vector<Timing> t{{500, 1.62}};
  const auto r = efficiency_report(t, 0.0);
  CHECK(format_fixed(r.seconds_per_1000, 2) == "3.24");
  const std::vector<Timing> t2{{400, 1000.0}, {600, 2600.0}};
  const auto r2 = efficiency_report(t2, 2.0);
  CHECK(r2.examples == 1000);
  CHECK(r2.seconds_per_1000 == 3600.0);
  CHECK(r2.cost_per_1000 == 2.0);
  CHECK(efficiency_json(r2)["cost_per_1000"] == 2.0);
  CHECK_THROWS_AS(efficiency_report(std::vector<Timing>{{0, 1.0}}, 1.0), Error);
  CHECK_THROWS_AS(efficiency_report(std::vector<Timing>{{10, -1.0}}, 1.0), Error);
  CHECK_THROWS_AS(efficiency_report(t, -1.0), Error);
}

TEST_CASE("uniform predictions") {
  const auto p = uniform_pairs({3, 3, 3}, {1, 3, 5});
  CHECK(mae(p) == doctest::Approx(4.0 / 3.0));
  CHECK(adjacent_accuracy(p) == doctest::Approx(1.0 / 3.0));
  CHECK_FALSE(pearson(p, 0));
}
