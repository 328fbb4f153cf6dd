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

// Line-delimited JSON corpus I/O and the split/task/language accounting
// tables built on top of it.
//
// One record per line:
//   {"id", "task", "language", "split", "source_dataset", "inputs": {..},
//    "candidate", "gold": {informativeness, clarity, plausibility,
//    faithfulness} | null, "raw_ratings": [[i,c,p,f], ...] | null}
// emit() writes keys in exactly this order and `inputs` sorted by key.

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "omniscore/types.hpp"

namespace omniscore {

using Json = nlohmann::ordered_json;

namespace corpus {

enum class IngestMode { kStrict, kLenient };

struct Diagnostic {
  std::size_t line = 0;  // 1-based
  std::string field;     // JSON path, e.g. "raw_ratings[0][2]"
  std::string message;

  std::string to_string() const;
};

struct IngestResult {
  std::vector<EvaluationInstance> instances;
  std::size_t skipped = 0;
  std::vector<Diagnostic> diagnostics;
};

// Strict mode throws a validation Error for the first invalid line, naming
// the line and field. Lenient mode skips invalid lines and records one
// diagnostic per skipped line. An unreadable file is an I/O Error.
IngestResult ingest(const std::filesystem::path& path, IngestMode mode);
IngestResult ingest(std::istream& in, IngestMode mode);

// Single-record conversion. from_json throws FieldError.
struct FieldError : std::runtime_error {
  FieldError(std::string field_path, const std::string& message)
      : std::runtime_error(message), field(std::move(field_path)) {}
  std::string field;
};

EvaluationInstance from_json(const Json& record);
Json to_json(const EvaluationInstance& instance);

// Empty optional when valid, otherwise the first violated invariant.
std::optional<FieldError> check_instance(const EvaluationInstance& instance);

// Writes atomically (temp file + rename). Every instance must be valid.
void emit(std::span<const EvaluationInstance> instances,
          const std::filesystem::path& path);
std::string emit_string(std::span<const EvaluationInstance> instances);

// ---------------------------------------------------------------------------
// Accounting tables.

enum class GroupAxis {
  kSourceDataset,
  kTask,
  kSplit,
  kLanguage,
  kSourceTask,  // (source_dataset, task)
  kSplitTask,   // (split, task)
};

std::optional<GroupAxis> parse_group_axis(std::string_view name);
std::vector<std::string> group_columns(GroupAxis axis);
std::vector<std::string> group_key(const EvaluationInstance& instance,
                                   GroupAxis axis);

struct SplitTaskCell {
  Split split;
  TaskKind task;
  std::size_t count = 0;
  std::size_t split_total = 0;
  double percent = 0.0;  // unrounded 100 * count / split_total
};

// Every task for every split that occurs, in canonical order.
std::vector<SplitTaskCell> split_stats(
    std::span<const EvaluationInstance> instances);

struct DimensionMeansRow {
  std::vector<std::string> group;
  std::size_t n = 0;  // instances carrying gold scores
  // Absent when the group has no gold scores.
  std::optional<std::array<double, kNumDimensions>> means;
  std::optional<double> overall;
};

// Per-group dimension means over gold scores; overall is the mean of the
// four dimension means.
std::vector<DimensionMeansRow> dimension_means(
    std::span<const EvaluationInstance> instances, GroupAxis axis);

Json split_stats_json(const std::vector<SplitTaskCell>& cells);
std::string split_stats_table(const std::vector<SplitTaskCell>& cells);
Json dimension_means_json(const std::vector<DimensionMeansRow>& rows,
                          GroupAxis axis);
std::string dimension_means_table(const std::vector<DimensionMeansRow>& rows,
                                  GroupAxis axis);

}  // namespace corpus
}  // namespace omniscore
