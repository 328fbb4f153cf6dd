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

#include "omniscore/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "omniscore/table.hpp"

namespace omniscore::metrics {

namespace {

void check_series(std::span<const double> pred, std::span<const double> gold) {
  if (pred.size() != gold.size()) {
    throw ValidationError("metrics: prediction and gold lengths differ");
  }
  if (pred.empty()) throw ValidationError("metrics: empty input");
}

// Flattens the selected dimension(s) into two aligned series.
std::pair<std::vector<double>, std::vector<double>> flatten(
    const PairedScores& pairs, DimensionSel dim) {
  pairs.validate();
  if (dim && *dim >= kNumDimensions) {
    throw ValidationError("metrics: dimension index out of range");
  }
  std::vector<double> p, g;
  const std::size_t per = dim ? 1 : kNumDimensions;
  p.reserve(pairs.size() * per);
  g.reserve(pairs.size() * per);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      if (dim && *dim != d) continue;
      p.push_back(pairs.pred[i][d]);
      g.push_back(pairs.gold[i][d]);
    }
  }
  return {std::move(p), std::move(g)};
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace

void PairedScores::validate() const {
  if (pred.size() != gold.size()) {
    throw ValidationError("metrics: prediction and gold counts differ");
  }
  if (!meta.empty() && meta.size() != pred.size()) {
    throw ValidationError("metrics: metadata count differs from pair count");
  }
}

PairedScores PairedScores::subset(std::span<const std::size_t> rows) const {
  PairedScores out;
  for (std::size_t r : rows) {
    out.pred.push_back(pred[r]);
    out.gold.push_back(gold[r]);
    if (!meta.empty()) out.meta.push_back(meta[r]);
  }
  return out;
}

double mae(std::span<const double> pred, std::span<const double> gold) {
  check_series(pred, gold);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred[i] - gold[i]);
  return sum / static_cast<double>(pred.size());
}

double rmse(std::span<const double> pred, std::span<const double> gold) {
  check_series(pred, gold);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - gold[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

std::optional<double> pearson(std::span<const double> pred,
                              std::span<const double> gold) {
  if (pred.size() != gold.size()) {
    throw ValidationError("metrics: prediction and gold lengths differ");
  }
  const std::size_t n = pred.size();
  if (n < 2) return std::nullopt;
  double mp = 0.0, mg = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mp += pred[i];
    mg += gold[i];
  }
  mp /= static_cast<double>(n);
  mg /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = pred[i] - mp, b = gold[i] - mg;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double adjacent_accuracy(std::span<const double> pred,
                         std::span<const double> gold, double tolerance) {
  check_series(pred, gold);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (std::abs(round6(pred[i]) - gold[i]) <= tolerance) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double mae(const PairedScores& pairs, DimensionSel dim) {
  const auto [p, g] = flatten(pairs, dim);
  return mae(p, g);
}

double rmse(const PairedScores& pairs, DimensionSel dim) {
  const auto [p, g] = flatten(pairs, dim);
  return rmse(p, g);
}

std::optional<double> pearson(const PairedScores& pairs, std::size_t dim) {
  const auto [p, g] = flatten(pairs, dim);
  return pearson(p, g);
}

double adjacent_accuracy(const PairedScores& pairs, DimensionSel dim,
                         double tolerance) {
  const auto [p, g] = flatten(pairs, dim);
  return adjacent_accuracy(p, g, tolerance);
}

std::optional<double> mean_defined(std::span<const std::optional<double>> values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::kTask: return "task";
    case Axis::kLanguage: return "language";
    case Axis::kModel: return "model";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  if (name == "task") return Axis::kTask;
  if (name == "language") return Axis::kLanguage;
  if (name == "model") return Axis::kModel;
  throw ValidationError("unknown group axis \"" + std::string(name) +
                        "\" (expected task, language or model)");
}

std::vector<Axis> parse_axes(std::string_view text) {
  std::vector<Axis> out;
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const Axis a = parse_axis(text.substr(pos, end - pos));
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    pos = end + 1;
  }
  return out;
}

CellSet compute_cells(const PairedScores& pairs) {
  CellSet cs;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const auto [p, g] = flatten(pairs, d);
    MetricCell& c = cs.dims[d];
    c.n = pairs.size();
    c.mae = mae(p, g);
    c.rmse = rmse(p, g);
    c.pearson = pearson(p, g);
    c.acc = adjacent_accuracy(p, g);
  }
  const auto [p, g] = flatten(pairs, std::nullopt);
  cs.overall.n = pairs.size();
  cs.overall.mae = mae(p, g);
  cs.overall.rmse = rmse(p, g);
  std::array<std::optional<double>, kNumDimensions> rs;
  for (std::size_t d = 0; d < kNumDimensions; ++d) rs[d] = cs.dims[d].pearson;
  cs.overall.pearson = mean_defined(rs);
  cs.overall.acc = adjacent_accuracy(p, g);
  return cs;
}

namespace {

MetricCell average_cells(std::span<const MetricCell* const> cells) {
  MetricCell out;
  std::vector<std::optional<double>> rs;
  for (const MetricCell* c : cells) {
    out.n += c->n;
    out.mae += c->mae;
    out.rmse += c->rmse;
    out.acc += c->acc;
    rs.push_back(c->pearson);
  }
  const double k = static_cast<double>(cells.size());
  out.mae /= k;
  out.rmse /= k;
  out.acc /= k;
  out.pearson = mean_defined(rs);
  return out;
}

std::string axis_value(const PairMeta& m, Axis axis) {
  switch (axis) {
    case Axis::kTask: return std::string(to_string(m.task));
    case Axis::kLanguage: return m.language;
    case Axis::kModel: return m.model;
  }
  return {};
}

}  // namespace

MetricReport grouped_report(const PairedScores& pairs, std::span<const Axis> axes,
                            AverageMode mode) {
  pairs.validate();
  if (pairs.size() == 0) throw ValidationError("grouped report: no pairs");
  const bool by_model =
      std::find(axes.begin(), axes.end(), Axis::kModel) != axes.end();
  if (!axes.empty() && pairs.meta.empty()) {
    throw ValidationError("grouped report: grouping needs pair metadata");
  }

  MetricReport report;
  report.axes.assign(axes.begin(), axes.end());

  std::map<std::string, std::vector<std::size_t>> partitions;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    partitions[by_model ? pairs.meta[i].model : std::string()].push_back(i);
  }

  for (const auto& [model, rows] : partitions) {
    const PairedScores part = pairs.subset(rows);
    bool any_axis = false;
    for (Axis axis : axes) {
      if (axis == Axis::kModel) continue;
      any_axis = true;
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t i = 0; i < part.size(); ++i) {
        groups[axis_value(part.meta[i], axis)].push_back(i);
      }
      std::vector<GroupRow> group_rows;
      for (const auto& [value, idx] : groups) {
        GroupRow row;
        row.model = model;
        row.axis = std::string(to_string(axis));
        row.group = value;
        row.cells = compute_cells(part.subset(idx));
        group_rows.push_back(std::move(row));
      }
      GroupRow avg;
      avg.model = model;
      avg.axis = std::string(to_string(axis));
      avg.group = std::string(kAverageLabel);
      avg.average = true;
      if (mode == AverageMode::kPooled) {
        avg.cells = compute_cells(part);
      } else {
        for (std::size_t d = 0; d <= kNumDimensions; ++d) {
          std::vector<const MetricCell*> cells;
          for (const auto& r : group_rows) {
            cells.push_back(d < kNumDimensions ? &r.cells.dims[d] : &r.cells.overall);
          }
          (d < kNumDimensions ? avg.cells.dims[d] : avg.cells.overall) =
              average_cells(cells);
        }
      }
      for (auto& r : group_rows) report.rows.push_back(std::move(r));
      report.rows.push_back(std::move(avg));
    }
    if (!any_axis) {
      GroupRow row;
      row.model = model;
      row.axis = "all";
      row.group = "all";
      row.cells = compute_cells(part);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

Json cell_json(const MetricCell& c) {
  Json j;
  j["n"] = c.n;
  j["mae"] = c.mae;
  j["rmse"] = c.rmse;
  j["pearson"] = c.pearson ? Json(*c.pearson) : Json(nullptr);
  j["acc_pm1"] = c.acc;
  return j;
}

std::string fmt(const std::optional<double>& v) {
  return v ? format_fixed(*v, 2) : std::string("n/a");
}

using Getter = std::optional<double> (*)(const MetricCell&);

struct MetricColumn {
  const char* name;
  Getter get;
};

constexpr MetricColumn kMetricColumns[] = {
    {"MAE", [](const MetricCell& c) -> std::optional<double> { return c.mae; }},
    {"RMSE", [](const MetricCell& c) -> std::optional<double> { return c.rmse; }},
    {"r", [](const MetricCell& c) { return c.pearson; }},
    {"Acc@1", [](const MetricCell& c) -> std::optional<double> { return c.acc; }},
};

std::string model_label(const std::string& model) {
  return model.empty() ? std::string("(all)") : model;
}

}  // namespace

Json report_json(const MetricReport& report) {
  Json j;
  Json axes = Json::array();
  for (Axis a : report.axes) axes.push_back(std::string(to_string(a)));
  j["axes"] = axes;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row;
    row["model"] = r.model;
    row["axis"] = r.axis;
    row["group"] = r.group;
    row["average"] = r.average;
    Json dims;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      dims[std::string(dimension_key(d))] = cell_json(r.cells.dims[d]);
    }
    dims["overall"] = cell_json(r.cells.overall);
    row["dimensions"] = dims;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

std::string report_tables(const MetricReport& report) {
  std::string out;
  // Distinct axes in order of first appearance.
  std::vector<std::string> axes;
  for (const auto& r : report.rows) {
    if (std::find(axes.begin(), axes.end(), r.axis) == axes.end()) {
      axes.push_back(r.axis);
    }
  }
  for (const auto& axis : axes) {
    std::vector<std::string> models, groups;
    std::map<std::pair<std::string, std::string>, const GroupRow*> cell;
    for (const auto& r : report.rows) {
      if (r.axis != axis) continue;
      if (std::find(models.begin(), models.end(), r.model) == models.end()) {
        models.push_back(r.model);
      }
      if (!r.average &&
          std::find(groups.begin(), groups.end(), r.group) == groups.end()) {
        groups.push_back(r.group);
      }
      cell[{r.model, r.group}] = &r;
    }
    std::sort(groups.begin(), groups.end());
    const bool has_avg = axis != "all";
    for (const auto& metric : kMetricColumns) {
      std::vector<std::string> header{"Model"};
      for (const auto& g : groups) header.push_back(g);
      if (has_avg) header.emplace_back(kAverageLabel);
      TextTable t(header);
      for (const auto& m : models) {
        std::vector<std::string> row{model_label(m)};
        for (const auto& g : groups) {
          const auto it = cell.find({m, g});
          row.push_back(it == cell.end() ? "-" : fmt(metric.get(it->second->cells.overall)));
        }
        if (has_avg) {
          row.push_back(fmt(metric.get(cell.at({m, std::string(kAverageLabel)})->cells.overall)));
        }
        t.add_row(row);
      }
      out += metric.name;
      out += " by ";
      out += axis;
      out += "\n";
      out += t.render();
      out += "\n";
    }
  }

  TextTable detail({"Model", "Axis", "Group", "Dim.", "n", "MAE", "RMSE", "r", "Acc@1"});
  for (const auto& r : report.rows) {
    for (std::size_t d = 0; d <= kNumDimensions; ++d) {
      const MetricCell& c = d < kNumDimensions ? r.cells.dims[d] : r.cells.overall;
      detail.add_row({model_label(r.model), r.axis, r.group,
                      d < kNumDimensions ? std::string(dimension_label(d)) : "All",
                      std::to_string(c.n), fmt(c.mae), fmt(c.rmse), fmt(c.pearson),
                      fmt(c.acc)});
    }
  }
  out += "Per-dimension breakdown\n";
  out += detail.render();
  return out;
}

double weighted_language_mae(const PairedScores& pairs, DimensionSel dim) {
  pairs.validate();
  if (pairs.size() == 0) throw ValidationError("weighted MAE: no pairs");
  if (pairs.meta.empty()) {
    throw ValidationError("weighted MAE: language metadata is missing");
  }
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    groups[pairs.meta[i].language].push_back(i);
  }
  double num = 0.0;
  std::size_t den = 0;
  for (const auto& [lang, idx] : groups) {
    num += static_cast<double>(idx.size()) * mae(pairs.subset(idx), dim);
    den += idx.size();
  }
  return num / static_cast<double>(den);
}

// ---------------------------------------------------------------------------

EfficiencyReport efficiency_report(std::span<const Timing> timings,
                                   double unit_cost_per_hour) {
  if (!(unit_cost_per_hour >= 0.0)) {
    throw ValidationError("efficiency: unit cost must be non-negative");
  }
  EfficiencyReport r;
  r.unit_cost_per_hour = unit_cost_per_hour;
  for (const auto& t : timings) {
    if (!(t.seconds >= 0.0)) throw ValidationError("efficiency: negative duration");
    r.examples += t.examples;
    r.seconds += t.seconds;
  }
  if (r.examples == 0) throw ValidationError("efficiency: zero examples");
  r.seconds_per_1000 = r.seconds * 1000.0 / static_cast<double>(r.examples);
  r.cost_per_1000 = r.seconds_per_1000 / 3600.0 * unit_cost_per_hour;
  return r;
}

Json efficiency_json(const EfficiencyReport& r) {
  Json j;
  j["examples"] = r.examples;
  j["seconds"] = r.seconds;
  j["unit_cost_per_hour"] = r.unit_cost_per_hour;
  j["seconds_per_1000"] = r.seconds_per_1000;
  j["cost_per_1000"] = r.cost_per_1000;
  return j;
}

}  // namespace omniscore::metrics
