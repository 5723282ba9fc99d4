// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sustext/classifiers.hpp"
#include "sustext/config_space.hpp"
#include "sustext/metrics.hpp"
#include "sustext/optimizer.hpp"

namespace sustext {

struct LabeledSet {
  std::vector<std::string> ids;
  std::vector<std::string> texts;
  std::vector<LabelSet> labels;

  std::size_t size() const { return ids.size(); }
  LabelMap gold() const;
};

// Selects the passages named in `ids`, in that order. Throws when an id is
// missing or unlabeled.
LabeledSet select_labeled(std::span<const Passage> passages, std::span<const std::string> ids);

struct SvmConfig {
  int max_ngram = 1;
  double c = 1.0;
};

// {max_ngram: integer [1, 4], C: linear_float [0.1, 10]}, default (1, 1.0).
const ConfigSpace& svm_config_space();

struct SeedResult {
  std::uint64_t seed = 0;
  SvmConfig best;
  double validation_weighted_f1 = 0.0;
  double default_validation_weighted_f1 = 0.0;
  MetricsReport test_report;          // best config, retrained on train
  MetricsReport default_test_report;  // default config
  std::vector<Trial> history;
  SvmPipeline model;
};

struct TuningSummary {
  std::vector<SeedResult> per_seed;
  MeanStd test_weighted_f1;
  MeanStd test_macro_f1;
  MeanStd test_micro_f1;
  MeanStd test_weighted_precision;
  MeanStd test_weighted_recall;

  // Tab-separated table of the mean and standard deviation across seeds.
  std::string table() const;
};

struct TuneOptions {
  std::size_t num_classes = LabelSchema::kNumClasses;
  OptimizerOptions optimizer;
  TrialCallback on_trial;
};

// Per seed: optimize validation weighted F1 over svm_config_space(), then
// retrain the best configuration on `train` and score it on `test`.
TuningSummary tune_svm_baseline(const LabeledSet& train, const LabeledSet& val, const LabeledSet& test,
                                std::size_t n_trials, std::span<const std::uint64_t> seeds,
                                const TuneOptions& options = {});

}  // namespace sustext
