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

// omniscore command-line tool.
//
// Settings come from defaults, then the --config file (INI; one section per
// subcommand, e.g. [train] epochs = 5), then flags.

#include <iostream>

#include "CLI11.hpp"
#include "omniscore/pipeline.hpp"

namespace {

using namespace omniscore;
namespace pl = omniscore::pipeline;

template <typename T, typename Parse>
void parse_enum(const std::string& text, T& out, Parse parse, const char* what) {
  const auto v = parse(text);
  if (!v) throw ValidationError(std::string("unknown ") + what + " \"" + text + "\"");
  out = *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OmniScore evaluation toolkit"};
  app.set_config("--config", "", "INI config file")->check(CLI::ExistingFile);
  app.set_version_flag("--version", std::string(pl::tool_version()));
  app.require_subcommand(1);

  // validate
  pl::ValidateOptions validate;
  auto* v = app.add_subcommand("validate", "Check a corpus file line by line");
  v->add_option("corpus", validate.corpus, "Corpus JSONL")->required();

  // annotate
  pl::AnnotateOptions annotate;
  int max_attempts = 3;
  std::vector<int> backoff_ms;
  auto* an = app.add_subcommand("annotate", "Label a corpus with the judge endpoint");
  an->add_option("--corpus", annotate.corpus)->required();
  an->add_option("--out", annotate.out, "Verdict file")->required();
  an->add_option("--endpoint", annotate.endpoint, "Judge URL")->required();
  an->add_option("--timeout", annotate.timeout_seconds, "Per-request timeout in seconds");
  an->add_option("--max-attempts", max_attempts)->check(CLI::PositiveNumber);
  an->add_option("--backoff-ms", backoff_ms, "Delays between attempts");
  an->add_option("--parallelism,--jobs", annotate.retry.parallelism, "Concurrent requests")
      ->check(CLI::PositiveNumber);
  an->add_flag("--repair-fences", annotate.retry.repair_fences,
               "Strip one markdown fence before parsing");
  an->add_option("--seed", annotate.seed);

  // agree
  pl::AgreeOptions agree;
  std::string agree_axis = "source_task";
  auto* ag = app.add_subcommand("agree", "Rater agreement per group");
  ag->add_option("--corpus", agree.corpus)->required();
  ag->add_option("--out", agree.out)->required();
  ag->add_option("--group-by", agree_axis,
                 "source_dataset|task|split|language|source_task|split_task");
  ag->add_option("--seed", agree.seed);

  // train
  pl::TrainOptions train;
  std::string encoder_kind = "hashed_ngram";
  std::string train_verdicts, dev_verdicts;
  std::size_t bucket_bits = 14;
  auto* tr = app.add_subcommand("train", "Train the four-head regressor");
  tr->add_option("--train", train.train, "Corpus holding the train split")->required();
  tr->add_option("--dev", train.dev, "Corpus holding the dev split")->required();
  tr->add_option("--out", train.out, "Checkpoint path")->required();
  tr->add_option("--train-verdicts", train_verdicts, "Take train labels from verdicts");
  tr->add_option("--dev-verdicts", dev_verdicts, "Take dev labels from verdicts");
  tr->add_option("--epochs", train.train_config.epochs);
  tr->add_option("--batch", train.train_config.batch_size);
  tr->add_option("--lr-backbone", train.train_config.lr_backbone);
  tr->add_option("--lr-heads", train.train_config.lr_heads);
  tr->add_option("--weight-decay", train.train_config.weight_decay);
  tr->add_option("--head-init-scale", train.train_config.head_init_scale);
  tr->add_option("--seed", train.train_config.seed);
  tr->add_option("--encoder", encoder_kind, "hashed_ngram|tiny_transformer");
  tr->add_option("--embedding-dim", train.encoder.embedding_dim);
  tr->add_option("--encoder-seed", train.encoder.seed);
  tr->add_option("--char-budget", train.encoder.char_budget);
  tr->add_option("--init-scale", train.encoder.init_scale);
  tr->add_option("--ngram-sizes", train.encoder.ngram_sizes);
  tr->add_option("--bucket-bits", bucket_bits, "log2 of the hash bucket count")
      ->check(CLI::Range(1, 30));
  tr->add_option("--layers", train.encoder.layers);
  tr->add_option("--heads", train.encoder.heads);
  tr->add_option("--context-length", train.encoder.context_length);
  tr->add_option("--vocab-size", train.encoder.vocab_size);
  tr->add_option("--ffn-dim", train.encoder.ffn_dim);

  // score
  pl::ScoreOptions score;
  std::string score_split;
  auto* sc = app.add_subcommand("score", "Score a corpus with a checkpoint");
  sc->add_option("--corpus", score.corpus)->required();
  sc->add_option("--checkpoint", score.checkpoint)->required();
  sc->add_option("--out", score.out, "Score file")->required();
  sc->add_option("--split", score_split, "train|dev|test");
  sc->add_option("--batch", score.batch_size)->check(CLI::PositiveNumber);
  sc->add_option("--jobs", score.jobs)->check(CLI::PositiveNumber);

  // evaluate
  pl::EvaluateOptions evaluate;
  std::string group_by;
  bool pooled = false;
  auto* ev = app.add_subcommand("evaluate", "Metrics of predictions against gold");
  ev->add_option("--pred", evaluate.predictions, "Score file, or model=path")->required();
  ev->add_option("--gold", evaluate.gold, "Gold corpus")->required();
  ev->add_option("--out", evaluate.out, "Report JSON")->required();
  ev->add_option("--group-by", group_by, "Comma list of task, language, model");
  ev->add_flag("--pooled-average", pooled, "Pool pairs for the Avg. rows");

  // report
  pl::ReportOptions report;
  std::string report_kind = "splits", report_axis = "task";
  auto* rp = app.add_subcommand("report", "Corpus accounting and efficiency tables");
  rp->add_option("--kind", report_kind, "splits|means|efficiency");
  rp->add_option("--out", report.out)->required();
  rp->add_option("--corpus", report.corpus);
  rp->add_option("--group-by", report_axis);
  rp->add_option("--scores", report.scores);
  rp->add_option("--gold", report.gold);
  rp->add_option("--checkpoint", report.checkpoint);
  rp->add_option("--model", report.model);
  rp->add_option("--unit-cost", report.unit_cost_per_hour, "Cost per hour of compute");

  // synth
  pl::SynthOptions synth;
  auto* sy = app.add_subcommand("synth", "Write a planted-signal corpus");
  sy->add_option("--out", synth.out)->required();
  sy->add_option("--size", synth.planted.size);
  sy->add_option("--seed", synth.planted.seed);
  sy->add_option("--train-fraction", synth.planted.train_fraction);
  sy->add_option("--dev-fraction", synth.planted.dev_fraction);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pl::kExitValidation;
  }

  try {
    auto& out = std::cout;
    auto& err = std::cerr;
    if (*v) return pl::cmd_validate(validate, out, err);
    if (*an) {
      annotate.retry.max_attempts = max_attempts;
      for (int ms : backoff_ms) annotate.retry.backoff.emplace_back(ms);
      return pl::cmd_annotate(annotate, out, err);
    }
    if (*ag) {
      parse_enum(agree_axis, agree.group_by, corpus::parse_group_axis, "group axis");
      return pl::cmd_agree(agree, out, err);
    }
    if (*tr) {
      parse_enum(encoder_kind, train.encoder.kind, encoder::parse_encoder_kind, "encoder");
      train.encoder.hash_buckets = std::size_t{1} << bucket_bits;
      if (!train_verdicts.empty()) train.train_verdicts = train_verdicts;
      if (!dev_verdicts.empty()) train.dev_verdicts = dev_verdicts;
      return pl::cmd_train(train, out, err);
    }
    if (*sc) {
      if (!score_split.empty()) {
        Split s;
        parse_enum(score_split, s, parse_split, "split");
        score.split = s;
      }
      return pl::cmd_score(score, out, err);
    }
    if (*ev) {
      evaluate.group_by = metrics::parse_axes(group_by);
      if (pooled) evaluate.average = metrics::AverageMode::kPooled;
      return pl::cmd_evaluate(evaluate, out, err);
    }
    if (*rp) {
      parse_enum(report_kind, report.kind, pl::parse_report_kind, "report kind");
      parse_enum(report_axis, report.group_by, corpus::parse_group_axis, "group axis");
      return pl::cmd_report(report, out, err);
    }
    if (*sy) return pl::cmd_synth(synth, out, err);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pl::exit_code(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pl::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pl::kExitValidation;
  }
  return pl::kExitValidation;
}
