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

// Subcommand implementations behind the command-line tool. Each command
// reads its inputs, writes exactly one primary artifact atomically, and next
// to it a run manifest "<artifact>.manifest.json" with input hashes, the
// effective configuration, the seed and the tool version.
//
// Commands return the process exit code and report through `out` / `err`;
// errors derived from omniscore::Error propagate to the caller, which maps
// their kind to an exit code.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "omniscore/corpus.hpp"
#include "omniscore/encoder.hpp"
#include "omniscore/judge.hpp"
#include "omniscore/metrics.hpp"
#include "omniscore/regressor.hpp"
#include "omniscore/synthetic.hpp"

namespace omniscore::pipeline {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitJudge = 3;

int exit_code(ErrorKind kind);
std::string_view tool_version();

fs::path manifest_path(const fs::path& artifact);
// Writes the manifest for `artifact`, which must already exist.
void write_manifest(const fs::path& artifact, std::string_view command,
                    const Json& config, std::uint64_t seed,
                    const std::vector<fs::path>& inputs);

// ---------------------------------------------------------------------------
// Score files: one {"id", "scores": {...}} object per line, input order.

struct ScoredRow {
  std::string id;
  ScoreVector scores;
};

std::string scores_to_jsonl(const std::vector<ScoredRow>& rows);
std::vector<ScoredRow> read_scores(const fs::path& path);

// Pairs predictions with gold-labelled corpus instances by id. Every
// prediction must match an instance carrying gold scores.
metrics::PairedScores join_scores(const std::vector<ScoredRow>& predictions,
                                  std::span<const EvaluationInstance> gold,
                                  const std::string& model);

// Replaces each instance's gold with the scores of its successful verdict.
// Instances whose verdict failed or is missing are dropped and counted.
std::vector<EvaluationInstance> apply_verdicts(
    std::span<const EvaluationInstance> instances,
    std::span<const judge::Outcome> verdicts, std::size_t* dropped);

// ---------------------------------------------------------------------------

struct ValidateOptions {
  fs::path corpus;
};
// Reports every invalid line; 0 when all lines are valid, 1 otherwise.
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

struct AnnotateOptions {
  fs::path corpus;
  fs::path out;
  std::string endpoint;
  int timeout_seconds = 120;
  judge::RetryPolicy retry;
  std::uint64_t seed = 1;
};
// Exit 3 when any instance ends without a valid verdict; the verdict file is
// written either way.
int cmd_annotate(const AnnotateOptions& opts, judge::JudgeClient& client,
                 std::ostream& out, std::ostream& err);
int cmd_annotate(const AnnotateOptions& opts, std::ostream& out, std::ostream& err);

struct AgreeOptions {
  fs::path corpus;
  fs::path out;
  corpus::GroupAxis group_by = corpus::GroupAxis::kSourceTask;
  std::uint64_t seed = 1;
};
int cmd_agree(const AgreeOptions& opts, std::ostream& out, std::ostream& err);

// Only train-split records of `train` and dev-split records of `dev` are
// used, so both may name the same corpus file.
struct TrainOptions {
  fs::path train;
  fs::path dev;
  fs::path out;
  std::optional<fs::path> train_verdicts;
  std::optional<fs::path> dev_verdicts;
  encoder::EncoderConfig encoder;
  regressor::TrainConfig train_config;
};
int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct ScoreOptions {
  fs::path corpus;
  fs::path checkpoint;
  fs::path out;
  std::optional<Split> split;  // score only this split when set
  std::size_t batch_size = 64;
  unsigned jobs = 1;
};
// Also writes "<out>.timings.json" with per-batch wall times; it is kept out
// of the manifest so that repeated runs produce identical manifests.
int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream& err);
fs::path timings_path(const fs::path& scores);

struct EvaluateOptions {
  // "path" or "model=path"; the model tag defaults to the file stem.
  std::vector<std::string> predictions;
  fs::path gold;
  fs::path out;
  std::vector<metrics::Axis> group_by;
  metrics::AverageMode average = metrics::AverageMode::kUnweighted;
};
metrics::MetricReport evaluate(const EvaluateOptions& opts);
int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);

enum class ReportKind { kSplits, kMeans, kEfficiency };
std::optional<ReportKind> parse_report_kind(std::string_view name);

struct ReportOptions {
  ReportKind kind = ReportKind::kSplits;
  fs::path out;
  // kSplits / kMeans
  fs::path corpus;
  corpus::GroupAxis group_by = corpus::GroupAxis::kTask;
  // kEfficiency
  fs::path scores;
  fs::path gold;
  fs::path checkpoint;
  std::string model;
  double unit_cost_per_hour = 0.0;
};
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);

struct SynthOptions {
  fs::path out;
  synthetic::PlantedConfig planted;
};
int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace omniscore::pipeline
