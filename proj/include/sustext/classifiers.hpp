// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sustext/corpus.hpp"
#include "sustext/keyword_matcher.hpp"
#include "sustext/scores.hpp"
#include "sustext/svm.hpp"
#include "sustext/tfidf.hpp"

namespace sustext {

// Classes whose issue keywords occur in the passage.
LabelSet keyword_classify(const Passage& passage, const KeywordLexicon& lexicon);

// TF-IDF features feeding a one-vs-rest linear SVM.
struct SvmPipeline {
  TfidfModel tfidf;
  OvrSvmEnsemble svm;

  static SvmPipeline fit(std::span<const std::string> texts, std::span<const LabelSet> labels, int max_ngram,
                         double c, std::size_t num_classes = LabelSchema::kNumClasses,
                         std::uint64_t seed = 0);

  SvmPrediction predict(std::string_view text) const { return svm_predict(svm, tfidf.transform(text)); }
};

// Predicts every passage with the keyword baseline.
PredictionSet keyword_predictions(std::span<const Passage> passages, const KeywordLexicon& lexicon);
PredictionSet svm_predictions(std::span<const Passage> passages, const SvmPipeline& model);

// Decision-kind score matrix from the SVM, for export.
ScoreMatrix svm_score_matrix(std::span<const Passage> passages, const SvmPipeline& model);

}  // namespace sustext
