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

// Gold labels from multiple raters and the within-group agreement index
//   r = 1 - s^2 / sigma_max^2,
// with s^2 the population variance of one item's ratings and
// sigma_max^2 = ((max - min) / 2)^2 the variance of an even split between
// the scale endpoints (4 on a 1..5 scale).

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "omniscore/corpus.hpp"
#include "omniscore/types.hpp"

namespace omniscore::agreement {

struct RatingItem {
  std::string id;
  std::vector<RatingQuad> ratings;  // k >= 2 raters
  std::vector<std::string> group;
};

// Throws a validation Error unless k >= 2 and every rating is in 1..5.
void check_item(const RatingItem& item);

ScoreVector gold_from_ratings(const RatingItem& item);

// Evaluated as (D - 4*(k*sum(x^2) - sum(x)^2)) / D with D = (max-min)^2 * k^2
// in integers and a single final division, so the result is the correctly
// rounded index and equal rating multisets give bit-identical values.
// Clamped to [0, 1].
double rwg_item(std::span<const int> ratings, int scale_min = 1,
                int scale_max = 5);

struct AgreementReport {
  std::vector<std::string> group;
  std::array<double, kNumDimensions> rwg{};
  double overall = 0.0;
  std::size_t n = 0;
};

// Unweighted mean of per-item indices per dimension, one report per group in
// key order. Groups without items do not appear.
std::vector<AgreementReport> rwg_group(std::span<const RatingItem> items);

// Items for every instance with at least two raters, grouped on `axis`.
// Instances with fewer raters are counted in `skipped`.
std::vector<RatingItem> items_from_corpus(
    std::span<const EvaluationInstance> instances, corpus::GroupAxis axis,
    std::size_t* skipped = nullptr);

Json reports_json(const std::vector<AgreementReport>& reports,
                  corpus::GroupAxis axis);
std::string reports_table(const std::vector<AgreementReport>& reports,
                          corpus::GroupAxis axis);

}  // namespace omniscore::agreement
