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

#include "omniscore/pipeline.hpp"

#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "omniscore/agreement.hpp"
#include "omniscore/io.hpp"
#include "omniscore/table.hpp"
#include "omniscore/verdict.hpp"

namespace omniscore::pipeline {

namespace {

Json scores_json(const ScoreVector& s) {
  Json j;
  for (std::size_t d = 0; d < kNumDimensions; ++d) {
    j[std::string(dimension_key(d))] = s[d];
  }
  return j;
}

corpus::IngestResult load_strict(const fs::path& path) {
  return corpus::ingest(path, corpus::IngestMode::kStrict);
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kValidation: return kExitValidation;
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kJudge: return kExitJudge;
  }
  return kExitValidation;
}

std::string_view tool_version() { return OMNISCORE_VERSION; }

fs::path manifest_path(const fs::path& artifact) {
  fs::path p = artifact;
  p += ".manifest.json";
  return p;
}

void write_manifest(const fs::path& artifact, std::string_view command,
                    const Json& config, std::uint64_t seed,
                    const std::vector<fs::path>& inputs) {
  Json m;
  m["command"] = std::string(command);
  m["tool_version"] = std::string(tool_version());
  m["seed"] = seed;
  m["config"] = config;
  Json in = Json::array();
  for (const auto& p : inputs) {
    Json e;
    e["path"] = p.string();
    e["sha256"] = io::sha256_file(p);
    in.push_back(e);
  }
  m["inputs"] = in;
  Json art;
  art["path"] = artifact.string();
  art["sha256"] = io::sha256_file(artifact);
  m["artifact"] = art;
  io::write_file_atomic(manifest_path(artifact), m.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

std::string scores_to_jsonl(const std::vector<ScoredRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    Json j;
    j["id"] = r.id;
    j["scores"] = scores_json(r.scores);
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<ScoredRow> read_scores(const fs::path& path) {
  const std::string text = io::read_file(path);
  std::vector<ScoredRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    try {
      const Json j = Json::parse(line);
      ScoredRow r;
      r.id = j.at("id").get<std::string>();
      for (std::size_t d = 0; d < kNumDimensions; ++d) {
        r.scores[d] = j.at("scores").at(std::string(dimension_key(d))).get<double>();
      }
      if (!r.scores.valid()) throw ValidationError("scores outside [1, 5]");
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ValidationError(path.string() + ": line " + std::to_string(n) + ": " +
                            e.what());
    }
  }
  return rows;
}

metrics::PairedScores join_scores(const std::vector<ScoredRow>& predictions,
                                  std::span<const EvaluationInstance> gold,
                                  const std::string& model) {
  std::unordered_map<std::string, const EvaluationInstance*> by_id;
  for (const auto& inst : gold) by_id.emplace(inst.id, &inst);
  metrics::PairedScores pairs;
  for (const auto& row : predictions) {
    const auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      throw ValidationError("prediction for unknown instance \"" + row.id + "\"");
    }
    const EvaluationInstance& inst = *it->second;
    if (!inst.gold) {
      throw ValidationError("instance \"" + row.id + "\" has no gold scores");
    }
    pairs.pred.push_back(row.scores);
    pairs.gold.push_back(*inst.gold);
    pairs.meta.push_back({inst.task, inst.language, inst.source_dataset, model});
  }
  return pairs;
}

std::vector<EvaluationInstance> apply_verdicts(
    std::span<const EvaluationInstance> instances,
    std::span<const judge::Outcome> verdicts, std::size_t* dropped) {
  std::unordered_map<std::string, const judge::Outcome*> by_id;
  for (const auto& o : verdicts) by_id.emplace(o.id, &o);
  std::vector<EvaluationInstance> out;
  std::size_t lost = 0;
  for (const auto& inst : instances) {
    const auto it = by_id.find(inst.id);
    if (it == by_id.end() || !it->second->ok()) {
      ++lost;
      continue;
    }
    EvaluationInstance copy = inst;
    copy.gold = verdict::verdict_to_scores(*it->second->verdict);
    out.push_back(std::move(copy));
  }
  if (dropped) *dropped = lost;
  return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
  const auto result = corpus::ingest(opts.corpus, corpus::IngestMode::kLenient);
  for (const auto& d : result.diagnostics) {
    err << opts.corpus.string() << ": " << d.to_string() << "\n";
  }
  out << result.instances.size() << " valid, " << result.skipped << " invalid\n";
  return result.skipped == 0 ? kExitOk : kExitValidation;
}

int cmd_annotate(const AnnotateOptions& opts, judge::JudgeClient& client,
                 std::ostream& out, std::ostream& err) {
  const auto corpus = load_strict(opts.corpus);
  const auto outcomes = judge::annotate_batch(corpus.instances, client, opts.retry);
  io::write_file_atomic(opts.out, judge::verdicts_to_jsonl(outcomes));

  Json cfg;
  cfg["corpus"] = opts.corpus.string();
  cfg["endpoint"] = opts.endpoint;
  cfg["timeout_seconds"] = opts.timeout_seconds;
  cfg["max_attempts"] = opts.retry.max_attempts;
  Json backoff = Json::array();
  for (auto ms : opts.retry.backoff) backoff.push_back(ms.count());
  cfg["backoff_ms"] = backoff;
  cfg["parallelism"] = opts.retry.parallelism;
  cfg["repair_fences"] = opts.retry.repair_fences;
  cfg["temperature"] = 0.0;
  write_manifest(opts.out, "annotate", cfg, opts.seed, {opts.corpus});

  std::size_t failed = 0, unreachable = 0;
  for (const auto& o : outcomes) {
    if (o.ok()) continue;
    ++failed;
    if (o.transport_failure()) ++unreachable;
    err << o.id << ": " << o.failure_reason << " after " << o.attempts
        << " attempt(s): " << o.failure_detail << "\n";
  }
  out << outcomes.size() - failed << " annotated, " << failed << " failed ("
      << unreachable << " unreachable)\n";
  return failed == 0 ? kExitOk : kExitJudge;
}

int cmd_annotate(const AnnotateOptions& opts, std::ostream& out, std::ostream& err) {
  judge::HttpJudgeClient client(opts.endpoint, std::chrono::seconds(opts.timeout_seconds));
  return cmd_annotate(opts, client, out, err);
}

int cmd_agree(const AgreeOptions& opts, std::ostream& out, std::ostream& err) {
  const auto corpus = load_strict(opts.corpus);
  std::size_t skipped = 0;
  const auto items =
      agreement::items_from_corpus(corpus.instances, opts.group_by, &skipped);
  const auto reports = agreement::rwg_group(items);
  io::write_file_atomic(opts.out,
                        agreement::reports_json(reports, opts.group_by).dump(2) + "\n");
  Json cfg;
  cfg["corpus"] = opts.corpus.string();
  cfg["group_by"] = corpus::group_columns(opts.group_by);
  write_manifest(opts.out, "agree", cfg, opts.seed, {opts.corpus});
  out << agreement::reports_table(reports, opts.group_by);
  if (skipped) err << skipped << " instance(s) with fewer than two raters skipped\n";
  return kExitOk;
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  auto train_set =
      synthetic::select_split(load_strict(opts.train).instances, Split::kTrain);
  auto dev_set = synthetic::select_split(load_strict(opts.dev).instances, Split::kDev);
  std::vector<fs::path> inputs{opts.train, opts.dev};
  auto relabel = [&](std::vector<EvaluationInstance>& set,
                     const std::optional<fs::path>& verdicts, const char* name) {
    if (!verdicts) return;
    inputs.push_back(*verdicts);
    std::size_t dropped = 0;
    set = apply_verdicts(set, judge::read_verdicts(*verdicts), &dropped);
    if (dropped) {
      err << dropped << " " << name << " instance(s) without a valid verdict dropped\n";
    }
  };
  relabel(train_set, opts.train_verdicts, "train");
  relabel(dev_set, opts.dev_verdicts, "dev");

  const auto ckpt = regressor::train(
      train_set, dev_set, opts.encoder, opts.train_config,
      [&](const regressor::EpochRecord& r) {
        out << "epoch " << r.epoch << "  train_loss " << format_fixed(r.train_loss, 4)
            << "  dev_mae " << format_fixed(r.dev_mae_avg, 4) << "\n";
      });
  regressor::save_checkpoint(ckpt, opts.out);

  Json cfg;
  cfg["encoder"] = encoder::to_json(opts.encoder);
  cfg["train"] = regressor::to_json(opts.train_config);
  cfg["train_path"] = opts.train.string();
  cfg["dev_path"] = opts.dev.string();
  cfg["train_verdicts"] = opts.train_verdicts ? Json(opts.train_verdicts->string()) : Json();
  cfg["dev_verdicts"] = opts.dev_verdicts ? Json(opts.dev_verdicts->string()) : Json();
  write_manifest(opts.out, "train", cfg, opts.train_config.seed, inputs);
  out << "best epoch " << ckpt.epoch << "  dev_mae " << format_fixed(ckpt.dev_mae_avg, 4)
      << "\n";
  return kExitOk;
}

fs::path timings_path(const fs::path& scores) {
  fs::path p = scores;
  p += ".timings.json";
  return p;
}

int cmd_score(const ScoreOptions& opts, std::ostream& out, std::ostream&) {
  auto corpus = load_strict(opts.corpus);
  if (opts.split) {
    corpus.instances = synthetic::select_split(corpus.instances, *opts.split);
  }
  const auto ckpt = regressor::load_checkpoint(opts.checkpoint);
  const auto result =
      regressor::score_batch(corpus.instances, ckpt, opts.batch_size, opts.jobs);
  std::vector<ScoredRow> rows;
  rows.reserve(result.scores.size());
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    rows.push_back({corpus.instances[i].id, result.scores[i]});
  }
  io::write_file_atomic(opts.out, scores_to_jsonl(rows));

  Json timings = Json::array();
  std::vector<metrics::Timing> t;
  for (const auto& b : result.timings) {
    Json e;
    e["examples"] = b.examples;
    e["seconds"] = b.seconds;
    timings.push_back(e);
    t.push_back({b.examples, b.seconds});
  }
  Json tj;
  tj["batches"] = timings;
  if (!t.empty()) {
    const auto eff = metrics::efficiency_report(t, 0.0);
    tj["seconds_per_1000"] = eff.seconds_per_1000;
  }
  io::write_file_atomic(timings_path(opts.out), tj.dump(2) + "\n");

  Json cfg;
  cfg["corpus"] = opts.corpus.string();
  cfg["checkpoint"] = opts.checkpoint.string();
  cfg["split"] = opts.split ? Json(std::string(to_string(*opts.split))) : Json();
  cfg["batch_size"] = opts.batch_size;
  write_manifest(opts.out, "score", cfg, ckpt.seed, {opts.corpus, opts.checkpoint});
  out << rows.size() << " instance(s) scored\n";
  return kExitOk;
}

metrics::MetricReport evaluate(const EvaluateOptions& opts) {
  if (opts.predictions.empty()) throw ValidationError("evaluate: no predictions given");
  const auto gold = load_strict(opts.gold);
  metrics::PairedScores all;
  for (const auto& entry : opts.predictions) {
    std::string model;
    fs::path path;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      path = entry;
      model = path.stem().string();
    } else {
      model = entry.substr(0, eq);
      path = entry.substr(eq + 1);
    }
    auto pairs = join_scores(read_scores(path), gold.instances, model);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      all.pred.push_back(pairs.pred[i]);
      all.gold.push_back(pairs.gold[i]);
      all.meta.push_back(pairs.meta[i]);
    }
  }
  return metrics::grouped_report(all, opts.group_by, opts.average);
}

int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream&) {
  const auto report = evaluate(opts);
  io::write_file_atomic(opts.out, metrics::report_json(report).dump(2) + "\n");
  std::vector<fs::path> inputs{opts.gold};
  Json preds = Json::array();
  for (const auto& entry : opts.predictions) {
    const auto eq = entry.find('=');
    inputs.emplace_back(eq == std::string::npos ? entry : entry.substr(eq + 1));
    preds.push_back(entry);
  }
  Json cfg;
  cfg["predictions"] = preds;
  cfg["gold"] = opts.gold.string();
  Json axes = Json::array();
  for (auto a : opts.group_by) axes.push_back(std::string(metrics::to_string(a)));
  cfg["group_by"] = axes;
  cfg["average"] = opts.average == metrics::AverageMode::kPooled ? "pooled" : "unweighted";
  write_manifest(opts.out, "evaluate", cfg, 0, inputs);
  out << metrics::report_tables(report);
  return kExitOk;
}

std::optional<ReportKind> parse_report_kind(std::string_view name) {
  if (name == "splits") return ReportKind::kSplits;
  if (name == "means") return ReportKind::kMeans;
  if (name == "efficiency") return ReportKind::kEfficiency;
  return std::nullopt;
}

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream&) {
  Json cfg;
  std::vector<fs::path> inputs;
  Json artifact;
  std::string table;
  if (opts.kind == ReportKind::kSplits || opts.kind == ReportKind::kMeans) {
    const auto corpus = load_strict(opts.corpus);
    inputs.push_back(opts.corpus);
    cfg["corpus"] = opts.corpus.string();
    if (opts.kind == ReportKind::kSplits) {
      cfg["kind"] = "splits";
      const auto cells = corpus::split_stats(corpus.instances);
      artifact = corpus::split_stats_json(cells);
      table = corpus::split_stats_table(cells);
    } else {
      cfg["kind"] = "means";
      cfg["group_by"] = corpus::group_columns(opts.group_by);
      const auto rows = corpus::dimension_means(corpus.instances, opts.group_by);
      artifact = corpus::dimension_means_json(rows, opts.group_by);
      table = corpus::dimension_means_table(rows, opts.group_by);
    }
  } else {
    cfg["kind"] = "efficiency";
    const auto gold = load_strict(opts.gold);
    const auto ckpt = regressor::load_checkpoint(opts.checkpoint);
    const std::string model =
        opts.model.empty() ? opts.checkpoint.stem().string() : opts.model;
    const auto pairs = join_scores(read_scores(opts.scores), gold.instances, model);
    if (pairs.size() == 0) throw ValidationError("report: empty score file");

    const Json tj = Json::parse(io::read_file(timings_path(opts.scores)));
    std::vector<metrics::Timing> timings;
    for (const auto& b : tj.at("batches")) {
      timings.push_back({b.at("examples").get<std::size_t>(), b.at("seconds").get<double>()});
    }
    const auto eff = metrics::efficiency_report(timings, opts.unit_cost_per_hour);
    const std::size_t params =
        ckpt.encoder_params.size() + ckpt.heads.params.size();
    const std::size_t ctx = ckpt.encoder_config.kind == encoder::EncoderKind::kTinyTransformer
                                ? ckpt.encoder_config.context_length
                                : ckpt.encoder_config.char_budget;
    const double mae = metrics::mae(pairs);
    const double l_mae = metrics::weighted_language_mae(pairs);
    const double acc = metrics::adjacent_accuracy(pairs);

    artifact["model"] = model;
    artifact["params"] = params;
    artifact["ctx"] = ctx;
    artifact["mae"] = mae;
    artifact["l_mae"] = l_mae;
    artifact["acc_pm1"] = acc;
    artifact["seconds_per_1000"] = eff.seconds_per_1000;
    artifact["cost_per_1000"] = eff.cost_per_1000;
    artifact["efficiency"] = metrics::efficiency_json(eff);

    TextTable t({"Model", "Params", "Ctx", "MAE", "L-MAE", "Acc@1", "Time", "Cost"});
    t.add_row({model, std::to_string(params), std::to_string(ctx), format_fixed(mae, 2),
               format_fixed(l_mae, 2), format_fixed(acc, 2),
               format_fixed(eff.seconds_per_1000, 2), format_fixed(eff.cost_per_1000, 4)});
    table = t.render();

    inputs = {opts.scores, timings_path(opts.scores), opts.gold, opts.checkpoint};
    cfg["scores"] = opts.scores.string();
    cfg["gold"] = opts.gold.string();
    cfg["checkpoint"] = opts.checkpoint.string();
    cfg["unit_cost_per_hour"] = opts.unit_cost_per_hour;
    cfg["model"] = model;
  }
  io::write_file_atomic(opts.out, artifact.dump(2) + "\n");
  write_manifest(opts.out, "report", cfg, 0, inputs);
  out << table;
  return kExitOk;
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream&) {
  const auto instances = synthetic::planted_corpus(opts.planted);
  corpus::emit(instances, opts.out);
  Json cfg;
  cfg["size"] = opts.planted.size;
  cfg["train_fraction"] = opts.planted.train_fraction;
  cfg["dev_fraction"] = opts.planted.dev_fraction;
  cfg["filler_min"] = opts.planted.filler_min;
  cfg["filler_max"] = opts.planted.filler_max;
  write_manifest(opts.out, "synth", cfg, opts.planted.seed, {});
  out << instances.size() << " planted instance(s) written\n";
  return kExitOk;
}

}  // namespace omniscore::pipeline
