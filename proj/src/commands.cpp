// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/commands.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "sustext/classifiers.hpp"
#include "sustext/corpus_dir.hpp"
#include "sustext/error.hpp"
#include "sustext/io.hpp"
#include "sustext/model_io.hpp"
#include "sustext/scores.hpp"

namespace sustext {

namespace {

DocumentFormat infer_format(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path) || path.extension() == ".txt") return DocumentFormat::txt;
  return DocumentFormat::jsonl;
}

std::unordered_map<std::string, LabelSet> read_labels(const std::filesystem::path& path, const LabelSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::unordered_map<std::string, LabelSet> labels;
  for_each_jsonl(in, path.string(), [&](const json& j, std::size_t) {
    std::string id;
    if (j.contains("passage_id")) id = j.at("passage_id").get<std::string>();
    else id = j.at("id").get<std::string>();
    LabelSet set;
    for (const auto& c : j.at("gold_labels")) {
      const ClassId id_c = c.get<ClassId>();
      if (!schema.contains(id_c)) throw Error("unknown class id " + std::to_string(id_c));
      set.insert(id_c);
    }
    if (!labels.emplace(id, std::move(set)).second) throw Error("duplicate label record for '" + id + "'");
  });
  return labels;
}

}  // namespace

IngestResult run_ingest(const IngestOptions& options) {
  CorpusDirectory corpus;
  corpus.schema = schema_from_json(read_json_file(options.schema));
  corpus.lexicon = lexicon_from_json(read_json_file(options.lexicon));
  corpus.lexicon.validate(corpus.schema);
  corpus.documents = load_documents(options.docs, options.format.value_or(infer_format(options.docs)));
  if (corpus.documents.empty()) spdlog::warn("{} contains no documents", options.docs.string());

  IngestResult result;
  corpus.passages = ingest_documents(corpus.documents, corpus.lexicon, &result.report);

  if (options.labels) {
    auto labels = read_labels(*options.labels, corpus.schema);
    for (auto& p : corpus.passages) {
      const auto it = labels.find(p.id);
      if (it == labels.end()) continue;
      p.gold_labels = std::move(it->second);
      labels.erase(it);
      ++result.labeled_passages;
    }
    result.unmatched_labels = labels.size();
    if (result.unmatched_labels > 0)
      spdlog::warn("{} label records do not name a kept passage and were ignored", result.unmatched_labels);
    std::vector<Passage> labeled;
    for (const auto& p : corpus.passages) {
      if (p.gold_labels) labeled.push_back(p);
    }
    if (labeled.size() >= 10) {
      corpus.split = split_dataset(labeled, options.split_seed);
      result.split_written = true;
    } else {
      spdlog::warn("only {} labeled passages; no split written", labeled.size());
    }
  }

  corpus.save(options.out);
  json report = to_json(result.report);
  report["labeled_passages"] = result.labeled_passages;
  report["unmatched_labels"] = result.unmatched_labels;
  if (corpus.split) {
    report["split"] = {{"seed", corpus.split->seed},
                       {"train", corpus.split->train_ids.size()},
                       {"val", corpus.split->val_ids.size()},
                       {"test", corpus.split->test_ids.size()}};
  }
  write_file(options.out / "ingest_report.json", report.dump(2) + "\n");
  spdlog::info("ingest: {} documents ({} non-English), {} passages kept, {} dropped",
               result.report.documents_total, result.report.documents_non_english, result.report.passages_kept,
               result.report.passages_dropped);
  return result;
}

TuningSummary run_tune(const TuneCommandOptions& options) {
  if (options.seeds.empty()) throw Error("at least one seed is required");
  if (options.trials == 0) throw Error("--trials must be positive");
  const CorpusDirectory corpus = CorpusDirectory::load(options.corpus);
  if (!corpus.has_labels() || !corpus.split) throw Error(options.corpus.string() + " has no labels or no split");
  const LabeledSet train = select_labeled(corpus.passages, corpus.split->train_ids);
  const LabeledSet val = select_labeled(corpus.passages, corpus.split->val_ids);
  const LabeledSet test = select_labeled(corpus.passages, corpus.split->test_ids);

  TuneOptions tune;
  tune.num_classes = corpus.schema.size();
  tune.on_trial = [](const Trial& t) {
    spdlog::info("seed {} trial {}: {} -> {}", t.seed, t.index, to_json(t.config).dump(), t.objective);
  };
  TuningSummary summary = tune_svm_baseline(train, val, test, options.trials, options.seeds, tune);

  std::filesystem::create_directories(options.out);
  json per_seed = json::array();
  for (const auto& r : summary.per_seed) {
    std::ostringstream log;
    for (const auto& t : r.history) append_trial_log(log, t);
    write_file(options.out / ("trials_seed" + std::to_string(r.seed) + ".jsonl"), log.str());
    save_pipeline(options.out / ("model_seed" + std::to_string(r.seed)), r.model);
    per_seed.push_back({{"seed", r.seed},
                        {"best", {{"max_ngram", r.best.max_ngram}, {"C", r.best.c}}},
                        {"validation_weighted_f1", r.validation_weighted_f1},
                        {"default_validation_weighted_f1", r.default_validation_weighted_f1},
                        {"test", r.test_report.to_json()},
                        {"default_test", r.default_test_report.to_json()}});
  }
  const auto ms = [](const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.stddev}}; };
  const json doc = {{"trials", options.trials},
                    {"seeds", options.seeds},
                    {"per_seed", per_seed},
                    {"test_weighted_f1", ms(summary.test_weighted_f1)},
                    {"test_macro_f1", ms(summary.test_macro_f1)},
                    {"test_micro_f1", ms(summary.test_micro_f1)},
                    {"test_weighted_precision", ms(summary.test_weighted_precision)},
                    {"test_weighted_recall", ms(summary.test_weighted_recall)}};
  write_file(options.out / "summary.json", doc.dump(2) + "\n");
  write_file(options.out / "summary.tsv", summary.table());
  return summary;
}

MetricsReport run_evaluate(const EvaluateOptions& options) {
  const CorpusDirectory corpus = CorpusDirectory::load(options.corpus);
  if (!corpus.split) throw Error(options.corpus.string() + " has no split.json; ingest with --labels first");
  const LabeledSet test = select_labeled(corpus.passages, corpus.split->test_ids);
  std::vector<Passage> test_passages;
  {
    std::unordered_map<std::string, const Passage*> by_id;
    for (const auto& p : corpus.passages) by_id.emplace(p.id, &p);
    for (const auto& id : test.ids) test_passages.push_back(*by_id.at(id));
  }

  PredictionSet pred;
  const std::string& src = options.pred;
  if (src == "keyword") {
    pred = keyword_predictions(test_passages, corpus.lexicon);
  } else if (src.rfind("svm:", 0) == 0) {
    pred = svm_predictions(test_passages, load_pipeline(src.substr(4)));
  } else if (src.rfind("scores:", 0) == 0) {
    const PredictionSet all = threshold_predict(import_scores(src.substr(7), corpus.schema.size()), options.threshold);
    pred.threshold_used = all.threshold_used;
    for (const auto& id : test.ids) {
      const auto it = all.labels.find(id);
      if (it == all.labels.end()) throw Error("score matrix has no row for test passage '" + id + "'");
      pred.labels.emplace(id, it->second);
    }
  } else {
    throw Error("unknown prediction source '" + src + "' (expected keyword, svm:<dir> or scores:<csv>)");
  }

  const MetricsReport report = evaluate(pred, test.gold(), corpus.schema.size());
  if (options.out) {
    std::filesystem::create_directories(*options.out);
    json j = report.to_json();
    j["pred"] = src;
    j["test_passages"] = test.size();
    if (pred.threshold_used) j["threshold"] = *pred.threshold_used;
    write_file(*options.out / "metrics.json", j.dump(2) + "\n");
    write_file(*options.out / "metrics.txt", report.to_key_value());
  }
  return report;
}

DemoCorpus run_gen_demo(std::uint64_t seed, const std::filesystem::path& out) {
  DemoCorpus corpus = generate_demo_corpus(seed);
  write_demo_corpus(out, corpus);
  spdlog::info("gen-demo: {} documents, {} labeled passages", corpus.documents.size(), corpus.labels.size());
  return corpus;
}

}  // namespace sustext
