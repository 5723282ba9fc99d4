// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sustext/corpus.hpp"
#include "sustext/demo.hpp"
#include "sustext/metrics.hpp"
#include "sustext/tuning.hpp"

// The operations behind the `sustext` subcommands. Each one reads and
// writes files only; logging goes to the spdlog default logger.
namespace sustext {

struct IngestOptions {
  std::filesystem::path docs;
  std::optional<DocumentFormat> format;  // inferred from the path when unset
  std::filesystem::path lexicon;
  std::filesystem::path schema;
  std::filesystem::path out;
  // JSON Lines of {"id" or "passage_id", "gold_labels": [class ids]}.
  std::optional<std::filesystem::path> labels;
  std::uint64_t split_seed = 42;
};

struct IngestResult {
  IngestReport report;
  std::size_t labeled_passages = 0;
  std::size_t unmatched_labels = 0;  // label records naming no kept passage
  bool split_written = false;
};

// Writes a corpus directory (see CorpusDirectory) plus ingest_report.json.
IngestResult run_ingest(const IngestOptions& options);

struct TuneCommandOptions {
  std::filesystem::path corpus;
  std::size_t trials = 50;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::filesystem::path out;
};

// Writes trials_seed<s>.jsonl, model_seed<s>/, summary.tsv and
// summary.json under `out`.
TuningSummary run_tune(const TuneCommandOptions& options);

struct EvaluateOptions {
  std::filesystem::path corpus;
  // "keyword", "svm:<model dir>" or "scores:<csv>".
  std::string pred = "keyword";
  double threshold = 0.33;
  std::optional<std::filesystem::path> out;
};

// Scores the predictions on the test split. Writes metrics.json and
// metrics.txt under `out` when set.
MetricsReport run_evaluate(const EvaluateOptions& options);

DemoCorpus run_gen_demo(std::uint64_t seed, const std::filesystem::path& out);

}  // namespace sustext
