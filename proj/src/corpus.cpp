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

#include "omniscore/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "omniscore/io.hpp"
#include "omniscore/prompts.hpp"
#include "omniscore/table.hpp"

namespace omniscore::corpus {

namespace {

constexpr const char* kRecordKeys[] = {
    "id",        "task", "language", "split",      "source_dataset",
    "inputs",    "candidate", "gold", "raw_ratings"};

const Json& require(const Json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw FieldError(key, "missing field");
  return *it;
}

std::string require_string(const Json& obj, const char* key) {
  const Json& v = require(obj, key);
  if (!v.is_string()) throw FieldError(key, "expected a string");
  return v.get<std::string>();
}

ScoreVector parse_gold(const Json& v) {
  if (!v.is_object()) throw FieldError("gold", "expected an object or null");
  ScoreVector s;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    const std::string key(dimension_key(d));
    const std::string path = "gold." + key;
    const auto it = v.find(key);
    if (it == v.end()) throw FieldError(path, "missing field");
    if (!it->is_number()) throw FieldError(path, "expected a number");
    const double x = it->get<double>();
    if (!std::isfinite(x) || x < kScaleMin || x > kScaleMax) {
      throw FieldError(path, "gold score outside [1, 5]");
    }
    s[d] = x;
  }
  return s;
}

std::vector<RatingQuad> parse_ratings(const Json& v) {
  if (!v.is_array()) {
    throw FieldError("raw_ratings", "expected an array or null");
  }
  std::vector<RatingQuad> out;
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::string row_path = "raw_ratings[" + std::to_string(r) + "]";
    const Json& row = v[r];
    if (!row.is_array() || row.size() != kNumDimensions) {
      throw FieldError(row_path, "expected an array of 4 integers");
    }
    RatingQuad q{};
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const std::string path = row_path + "[" + std::to_string(d) + "]";
      const Json& x = row[d];
      if (!x.is_number_integer()) throw FieldError(path, "expected an integer");
      const auto value = x.get<long long>();
      if (value < 1 || value > 5) {
        throw FieldError(path, "rating " + std::to_string(value) +
                                   " outside 1..5");
      }
      q[d] = static_cast<int>(value);
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace

std::string Diagnostic::to_string() const {
  std::string s = "line " + std::to_string(line);
  if (!field.empty()) s += ": " + field;
  return s + ": " + message;
}

std::optional<FieldError> check_instance(const EvaluationInstance& inst) {
  if (inst.id.empty()) return FieldError("id", "empty id");
  if (inst.language.empty()) return FieldError("language", "empty language");
  if (inst.candidate.empty()) {
    return FieldError("candidate", "empty candidate");
  }
  for (const auto& field :
       prompts::required_input_fields(inst.task, inst.source_dataset)) {
    if (!inst.inputs.count(field)) {
      return FieldError("inputs." + field, "missing input required by the " +
                                               std::string(to_string(inst.task)) +
                                               " prompt");
    }
  }
  if (inst.gold && !inst.gold->valid()) {
    return FieldError("gold", "gold score outside [1, 5]");
  }
  if (inst.raw_ratings) {
    for (std::size_t r = 0; r < inst.raw_ratings->size(); ++r) {
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        const int x = (*inst.raw_ratings)[r][d];
        if (x < 1 || x > 5) {
          return FieldError("raw_ratings[" + std::to_string(r) + "][" +
                                std::to_string(d) + "]",
                            "rating outside 1..5");
        }
      }
    }
  }
  return std::nullopt;
}

EvaluationInstance from_json(const Json& record) {
  if (!record.is_object()) throw FieldError("", "record is not an object");
  EvaluationInstance inst;
  inst.id = require_string(record, "id");

  const std::string task = require_string(record, "task");
  const auto parsed_task = parse_task(task);
  if (!parsed_task) throw FieldError("task", "unknown task \"" + task + "\"");
  inst.task = *parsed_task;

  inst.language = require_string(record, "language");

  const std::string split = require_string(record, "split");
  const auto parsed_split = parse_split(split);
  if (!parsed_split) {
    throw FieldError("split", "unknown split \"" + split + "\"");
  }
  inst.split = *parsed_split;

  inst.source_dataset = require_string(record, "source_dataset");

  const Json& inputs = require(record, "inputs");
  if (!inputs.is_object()) throw FieldError("inputs", "expected an object");
  for (const auto& [key, value] : inputs.items()) {
    if (!value.is_string()) {
      throw FieldError("inputs." + key, "expected a string");
    }
    inst.inputs.emplace(key, value.get<std::string>());
  }

  inst.candidate = require_string(record, "candidate");

  const Json& gold = require(record, "gold");
  if (!gold.is_null()) inst.gold = parse_gold(gold);
  const Json& ratings = require(record, "raw_ratings");
  if (!ratings.is_null()) inst.raw_ratings = parse_ratings(ratings);

  for (const auto& [key, value] : record.items()) {
    bool known = false;
    for (const char* k : kRecordKeys) known = known || key == k;
    if (!known) throw FieldError(key, "unknown field");
  }

  if (auto err = check_instance(inst)) throw *err;
  return inst;
}

Json to_json(const EvaluationInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["task"] = std::string(to_string(inst.task));
  j["language"] = inst.language;
  j["split"] = std::string(to_string(inst.split));
  j["source_dataset"] = inst.source_dataset;
  Json inputs = Json::object();
  for (const auto& [k, v] : inst.inputs) inputs[k] = v;
  j["inputs"] = std::move(inputs);
  j["candidate"] = inst.candidate;
  if (inst.gold) {
    Json g;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      g[std::string(dimension_key(d))] = (*inst.gold)[d];
    }
    j["gold"] = std::move(g);
  } else {
    j["gold"] = nullptr;
  }
  if (inst.raw_ratings) {
    Json rows = Json::array();
    for (const auto& q : *inst.raw_ratings) {
      rows.push_back(Json::array({q[0], q[1], q[2], q[3]}));
    }
    j["raw_ratings"] = std::move(rows);
  } else {
    j["raw_ratings"] = nullptr;
  }
  return j;
}

IngestResult ingest(std::istream& in, IngestMode mode) {
  IngestResult result;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::optional<Diagnostic> diag;
    try {
      Json record;
      try {
        record = Json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw FieldError("", std::string("malformed JSON: ") + e.what());
      }
      EvaluationInstance inst = from_json(record);
      if (!seen_ids.insert(inst.id).second) {
        throw FieldError("id", "duplicate id \"" + inst.id + "\"");
      }
      result.instances.push_back(std::move(inst));
    } catch (const FieldError& e) {
      diag = Diagnostic{line_no, e.field, e.what()};
    }
    if (diag) {
      if (mode == IngestMode::kStrict) {
        throw ValidationError(diag->to_string());
      }
      ++result.skipped;
      result.diagnostics.push_back(std::move(*diag));
    }
  }
  if (in.bad()) throw IoError("read error after line " + std::to_string(line_no));
  return result;
}

IngestResult ingest(const std::filesystem::path& path, IngestMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  try {
    return ingest(in, mode);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string emit_string(std::span<const EvaluationInstance> instances) {
  std::string out;
  for (const auto& inst : instances) {
    if (auto err = check_instance(inst)) {
      throw ValidationError("emit: instance " + inst.id + ": " + err->field +
                            ": " + err->what());
    }
    out += to_json(inst).dump();
    out += '\n';
  }
  return out;
}

void emit(std::span<const EvaluationInstance> instances,
          const std::filesystem::path& path) {
  io::write_file_atomic(path, emit_string(instances));
}

// ---------------------------------------------------------------------------

std::optional<GroupAxis> parse_group_axis(std::string_view name) {
  if (name == "source_dataset" || name == "source") {
    return GroupAxis::kSourceDataset;
  }
  if (name == "task") return GroupAxis::kTask;
  if (name == "split") return GroupAxis::kSplit;
  if (name == "language") return GroupAxis::kLanguage;
  if (name == "source_task") return GroupAxis::kSourceTask;
  if (name == "split_task") return GroupAxis::kSplitTask;
  return std::nullopt;
}

std::vector<std::string> group_columns(GroupAxis axis) {
  switch (axis) {
    case GroupAxis::kSourceDataset: return {"Source"};
    case GroupAxis::kTask: return {"Task"};
    case GroupAxis::kSplit: return {"Split"};
    case GroupAxis::kLanguage: return {"Language"};
    case GroupAxis::kSourceTask: return {"Source", "Task"};
    case GroupAxis::kSplitTask: return {"Split", "Task"};
  }
  return {};
}

std::vector<std::string> group_key(const EvaluationInstance& inst,
                                   GroupAxis axis) {
  const std::string task(to_string(inst.task));
  const std::string split(to_string(inst.split));
  switch (axis) {
    case GroupAxis::kSourceDataset: return {inst.source_dataset};
    case GroupAxis::kTask: return {task};
    case GroupAxis::kSplit: return {split};
    case GroupAxis::kLanguage: return {inst.language};
    case GroupAxis::kSourceTask: return {inst.source_dataset, task};
    case GroupAxis::kSplitTask: return {split, task};
  }
  return {};
}

std::vector<SplitTaskCell> split_stats(
    std::span<const EvaluationInstance> instances) {
  std::map<std::pair<Split, TaskKind>, std::size_t> counts;
  std::map<Split, std::size_t> totals;
  for (const auto& inst : instances) {
    ++counts[{inst.split, inst.task}];
    ++totals[inst.split];
  }
  std::vector<SplitTaskCell> cells;
  for (Split s : kAllSplits) {
    const auto total_it = totals.find(s);
    if (total_it == totals.end()) continue;
    for (TaskKind t : kAllTasks) {
      SplitTaskCell c{s, t, 0, total_it->second, 0.0};
      const auto it = counts.find({s, t});
      if (it != counts.end()) c.count = it->second;
      c.percent = 100.0 * static_cast<double>(c.count) /
                  static_cast<double>(c.split_total);
      cells.push_back(c);
    }
  }
  return cells;
}

std::vector<DimensionMeansRow> dimension_means(
    std::span<const EvaluationInstance> instances, GroupAxis axis) {
  struct Acc {
    std::size_t n = 0;
    std::array<double, kNumDimensions> sum{};
  };
  std::map<std::vector<std::string>, Acc> groups;
  for (const auto& inst : instances) {
    Acc& acc = groups[group_key(inst, axis)];
    if (!inst.gold) continue;
    ++acc.n;
    for (std::size_t d = 0; d < kNumDimensions; ++d) acc.sum[d] += (*inst.gold)[d];
  }
  std::vector<DimensionMeansRow> rows;
  for (const auto& [key, acc] : groups) {
    DimensionMeansRow row;
    row.group = key;
    row.n = acc.n;
    if (acc.n > 0) {
      std::array<double, kNumDimensions> means{};
      double total = 0.0;
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        means[d] = acc.sum[d] / static_cast<double>(acc.n);
        total += means[d];
      }
      row.means = means;
      row.overall = total / static_cast<double>(kNumDimensions);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json split_stats_json(const std::vector<SplitTaskCell>& cells) {
  Json out = Json::array();
  for (const auto& c : cells) {
    out.push_back({{"split", std::string(to_string(c.split))},
                   {"task", std::string(to_string(c.task))},
                   {"count", c.count},
                   {"split_total", c.split_total},
                   {"percent", round_half_away(c.percent, 1)}});
  }
  return out;
}

std::string split_stats_table(const std::vector<SplitTaskCell>& cells) {
  std::vector<std::string> header = {"Split", "Size"};
  for (TaskKind t : kAllTasks) header.emplace_back(to_string(t));
  TextTable table(header);
  for (Split s : kAllSplits) {
    std::vector<std::string> row;
    for (const auto& c : cells) {
      if (c.split != s) continue;
      if (row.empty()) {
        row.emplace_back(to_string(s));
        row.push_back(std::to_string(c.split_total));
      }
      row.push_back(format_fixed(c.percent, 1));
    }
    if (!row.empty()) table.add_row(std::move(row));
  }
  return table.render();
}

Json dimension_means_json(const std::vector<DimensionMeansRow>& rows,
                          GroupAxis axis) {
  const auto columns = group_columns(axis);
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    for (std::size_t i = 0; i < columns.size(); ++i) j[columns[i]] = r.group[i];
    j["n"] = r.n;
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      const std::string key(dimension_key(d));
      j[key] = r.means ? Json(round_half_away((*r.means)[d], 2)) : Json(nullptr);
    }
    j["overall"] = r.overall ? Json(round_half_away(*r.overall, 2)) : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

std::string dimension_means_table(const std::vector<DimensionMeansRow>& rows,
                                  GroupAxis axis) {
  std::vector<std::string> header = group_columns(axis);
  header.emplace_back("n");
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    header.emplace_back(dimension_label(d));
  }
  header.emplace_back("Overall");
  TextTable table(header);
  for (const auto& r : rows) {
    std::vector<std::string> row = r.group;
    row.push_back(std::to_string(r.n));
    for (std::size_t d = 0; d < kNumDimensions; ++d) {
      row.push_back(r.means ? format_fixed((*r.means)[d], 2) : "-");
    }
    row.push_back(r.overall ? format_fixed(*r.overall, 2) : "-");
    table.add_row(std::move(row));
  }
  return table.render();
}

}  // namespace omniscore::corpus
