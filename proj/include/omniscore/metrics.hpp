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

// Prediction-vs-gold metrics and the grouped reports built from them.
//
// A dimension selector of nullopt means "all": every (instance, dimension)
// pair is pooled into one sample.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omniscore/corpus.hpp"
#include "omniscore/types.hpp"

namespace omniscore::metrics {

struct PairMeta {
  TaskKind task = TaskKind::kQA;
  std::string language;
  std::string source;
  std::string model;
};

struct PairedScores {
  std::vector<ScoreVector> pred;
  std::vector<ScoreVector> gold;
  std::vector<PairMeta> meta;  // empty, or one entry per pair

  std::size_t size() const { return pred.size(); }
  // Throws a validation Error on length mismatch.
  void validate() const;
  PairedScores subset(std::span<const std::size_t> rows) const;
};

using DimensionSel = std::optional<std::size_t>;

// Errors: empty input or mismatched lengths.
double mae(const PairedScores& pairs, DimensionSel dim = std::nullopt);
double rmse(const PairedScores& pairs, DimensionSel dim = std::nullopt);
// Sample correlation; nullopt when n < 2 or either series is constant.
std::optional<double> pearson(const PairedScores& pairs, std::size_t dim);
// Predictions are rounded to 6 decimals, then |pred - gold| <= tolerance.
double adjacent_accuracy(const PairedScores& pairs,
                         DimensionSel dim = std::nullopt,
                         double tolerance = 1.0);

// Series-level forms used by the ones above.
double mae(std::span<const double> pred, std::span<const double> gold);
double rmse(std::span<const double> pred, std::span<const double> gold);
std::optional<double> pearson(std::span<const double> pred,
                              std::span<const double> gold);
double adjacent_accuracy(std::span<const double> pred,
                         std::span<const double> gold, double tolerance = 1.0);

// Mean of the values that are present; nullopt if none are.
std::optional<double> mean_defined(std::span<const std::optional<double>> values);

// ---------------------------------------------------------------------------
// Grouped reports.

enum class Axis { kTask, kLanguage, kModel };

std::string_view to_string(Axis axis);
// Errors: unknown axis name. Accepts "task", "language", "model".
Axis parse_axis(std::string_view name);
std::vector<Axis> parse_axes(std::string_view comma_separated);

struct MetricCell {
  std::size_t n = 0;
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> pearson;
  double acc = 0.0;

  friend bool operator==(const MetricCell&, const MetricCell&) = default;
};

// Per-dimension cells plus the "overall" cell: MAE / RMSE / Acc@±1 pooled
// over dimensions, Pearson the mean of the defined per-dimension values.
struct CellSet {
  std::array<MetricCell, kNumDimensions> dims;
  MetricCell overall;

  friend bool operator==(const CellSet&, const CellSet&) = default;
};

CellSet compute_cells(const PairedScores& pairs);

struct GroupRow {
  std::string model;  // empty unless grouping by model
  std::string axis;   // "task", "language" or "all"
  std::string group;  // group value, or "Avg."
  bool average = false;
  CellSet cells;

  friend bool operator==(const GroupRow&, const GroupRow&) = default;
};

struct MetricReport {
  std::vector<Axis> axes;
  std::vector<GroupRow> rows;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

enum class AverageMode {
  kUnweighted,  // mean of the group values (default)
  kPooled,      // metrics recomputed over all pairs in the partition
};

inline constexpr std::string_view kAverageLabel = "Avg.";

// Model, if selected, partitions the pairs. Every other selected axis yields
// one row per group (sorted by group value) followed by an "Avg." row. With
// no non-model axis, each partition gets a single "all" row.
MetricReport grouped_report(const PairedScores& pairs, std::span<const Axis> axes,
                            AverageMode mode = AverageMode::kUnweighted);

Json report_json(const MetricReport& report);
// Two-decimal tables laid out models x groups, one block per axis and metric,
// followed by the per-dimension breakdown.
std::string report_tables(const MetricReport& report);

// Sum over languages of n_l * MAE_l divided by the total count.
double weighted_language_mae(const PairedScores& pairs,
                             DimensionSel dim = std::nullopt);

// ---------------------------------------------------------------------------
// Throughput.

struct Timing {
  std::size_t examples = 0;
  double seconds = 0.0;
};

struct EfficiencyReport {
  std::size_t examples = 0;
  double seconds = 0.0;
  double unit_cost_per_hour = 0.0;
  double seconds_per_1000 = 0.0;
  double cost_per_1000 = 0.0;
};

// Errors: zero total examples, negative durations or cost.
EfficiencyReport efficiency_report(std::span<const Timing> timings,
                                   double unit_cost_per_hour);
Json efficiency_json(const EfficiencyReport& report);

}  // namespace omniscore::metrics
