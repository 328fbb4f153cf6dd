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

#include "omniscore/agreement.hpp"

#include <algorithm>
#include <map>

#include "omniscore/table.hpp"

namespace omniscore::agreement {

void check_item(const RatingItem& item) {
  if (item.ratings.size() < 2) {
    throw ValidationError("rating item " + item.id + " needs at least 2 raters");
  }
  for (const auto& q : item.ratings) {
    for (int x : q) {
      if (x < 1 || x > 5) {
        throw ValidationError("rating item " + item.id + ": rating outside 1..5");
      }
    }
  }
}

ScoreVector gold_from_ratings(const RatingItem& item) {
  check_item(item);
  ScoreVector gold;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    long long sum = 0;
    for (const auto& q : item.ratings) sum += q[d];
    gold[d] = static_cast<double>(sum) / static_cast<double>(item.ratings.size());
  }
  return gold;
}

double rwg_item(std::span<const int> ratings, int scale_min, int scale_max) {
  if (ratings.size() < 2) throw ValidationError("rwg needs at least 2 ratings");
  if (scale_max <= scale_min) throw ValidationError("rwg: empty rating scale");
  long long sum = 0;
  long long sum_sq = 0;
  for (int x : ratings) {
    if (x < scale_min || x > scale_max) {
      throw ValidationError("rwg: rating " + std::to_string(x) + " outside scale");
    }
    sum += x;
    sum_sq += static_cast<long long>(x) * x;
  }
  const auto k = static_cast<long long>(ratings.size());
  // k^2 * population variance, an exact integer.
  const long long spread = k * sum_sq - sum * sum;
  const long long range = scale_max - scale_min;
  // One division of exact integers: the result is the correctly rounded
  // value of the rational index.
  const long long den = range * range * k * k;
  const double r = static_cast<double>(den - 4 * spread) / static_cast<double>(den);
  return std::clamp(r, 0.0, 1.0);
}

std::vector<AgreementReport> rwg_group(std::span<const RatingItem> items) {
  struct Acc {
    std::size_t n = 0;
    std::array<double, kNumDimensions> sum{};
  };
  std::map<std::vector<std::string>, Acc> groups;
  std::vector<int> column;
  for (const auto& item : items) {
    check_item(item);
    Acc& acc = groups[item.group];
    ++acc.n;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      column.clear();
      for (const auto& q : item.ratings) column.push_back(q[d]);
      acc.sum[d] += rwg_item(column);
    }
  }
  std::vector<AgreementReport> reports;
  for (const auto& [key, acc] : groups) {
    AgreementReport r;
    r.group = key;
    r.n = acc.n;
    double total = 0.0;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      r.rwg[d] = acc.sum[d] / static_cast<double>(acc.n);
      total += r.rwg[d];
    }
    r.overall = total / static_cast<double>(kNumDimensions);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<RatingItem> items_from_corpus(
    std::span<const EvaluationInstance> instances, corpus::GroupAxis axis,
    std::size_t* skipped) {
  std::vector<RatingItem> items;
  std::size_t dropped = 0;
  for (const auto& inst : instances) {
    if (!inst.raw_ratings || inst.raw_ratings->size() < 2) {
      ++dropped;
      continue;
    }
    items.push_back({inst.id, *inst.raw_ratings, corpus::group_key(inst, axis)});
  }
  if (skipped) *skipped = dropped;
  return items;
}

Json reports_json(const std::vector<AgreementReport>& reports,
                  corpus::GroupAxis axis) {
  const auto columns = corpus::group_columns(axis);
  Json out = Json::array();
  for (const auto& r : reports) {
    Json j;
    for (std::size_t i = 0; i < columns.size(); ++i) j[columns[i]] = r.group[i];
    j["n"] = r.n;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      j[std::string(dimension_key(d))] = round_half_away(r.rwg[d], 2);
    }
    j["overall"] = round_half_away(r.overall, 2);
    out.push_back(std::move(j));
  }
  return out;
}

std::string reports_table(const std::vector<AgreementReport>& reports,
                          corpus::GroupAxis axis) {
  std::vector<std::string> header = corpus::group_columns(axis);
  header.emplace_back("n");
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    header.emplace_back(dimension_label(d));
  }
  header.emplace_back("Overall");
  TextTable table(header);
  for (const auto& r : reports) {
    std::vector<std::string> row = r.group;
    row.push_back(std::to_string(r.n));
    for (double v : r.rwg) row.push_back(format_fixed(v, 2));
    row.push_back(format_fixed(r.overall, 2));
    table.add_row(std::move(row));
  }
  return table.render();
}

}  // namespace omniscore::agreement
