// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/classifiers.hpp"

#include "sustext/error.hpp"

namespace sustext {

LabelSet keyword_classify(const Passage& passage, const KeywordLexicon& lexicon) {
  return KeywordMatcher(lexicon).classes(passage.text);
}

SvmPipeline SvmPipeline::fit(std::span<const std::string> texts, std::span<const LabelSet> labels, int max_ngram,
                             double c, std::size_t num_classes, std::uint64_t seed) {
  if (texts.size() != labels.size()) throw Error("text and label counts differ");
  SvmPipeline model;
  model.tfidf = fit_tfidf(texts, max_ngram);
  std::vector<SparseVector> x;
  x.reserve(texts.size());
  for (const auto& t : texts) x.push_back(model.tfidf.transform(t));
  SvmOptions options;
  options.seed = seed;
  model.svm = train_ovr_svm(x, labels, c, model.tfidf.vocabulary_size(), num_classes, options);
  return model;
}

PredictionSet keyword_predictions(std::span<const Passage> passages, const KeywordLexicon& lexicon) {
  const KeywordMatcher matcher(lexicon);
  PredictionSet out;
  for (const auto& p : passages) out.labels[p.id] = matcher.classes(p.text);
  return out;
}

PredictionSet svm_predictions(std::span<const Passage> passages, const SvmPipeline& model) {
  PredictionSet out;
  for (const auto& p : passages) out.labels[p.id] = model.predict(p.text).labels;
  return out;
}

ScoreMatrix svm_score_matrix(std::span<const Passage> passages, const SvmPipeline& model) {
  ScoreMatrix m;
  m.num_classes = model.svm.classes.size();
  for (const auto& p : passages) {
    m.passage_ids.push_back(p.id);
    m.kinds.push_back(ScoreKind::decision);
    m.scores.push_back(model.predict(p.text).scores);
  }
  return m;
}

}  // namespace sustext
