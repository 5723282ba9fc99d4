// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sustext {

// Sparse vector with strictly increasing indices.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double dot(std::span<const double> dense) const;
  double squared_norm() const;
};

// Word n-gram TF-IDF with smoothed idf:
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
// Raw counts times idf, L2-normalized. Stopwords are removed before
// n-grams are formed.
class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(int max_ngram, std::vector<std::string> terms, std::vector<double> idf,
             std::unordered_set<std::string> stopwords);

  int max_ngram() const { return max_ngram_; }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }

  // Column index of `term`, or -1.
  std::int64_t index_of(std::string_view term) const;
  double idf_of(std::string_view term) const;

  SparseVector transform(std::string_view text) const;

  // Lowercased word tokens with stopwords removed, joined into
  // 1..max_ngram-grams (space-separated).
  std::vector<std::string> analyze(std::string_view text) const;

 private:
  int max_ngram_ = 1;
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::unordered_set<std::string> stopwords_;
};

// Vocabulary columns are the sorted distinct n-grams. Throws when no text
// has a token left after stopword removal or max_ngram is outside [1, 4].
TfidfModel fit_tfidf(std::span<const std::string> texts, int max_ngram);
TfidfModel fit_tfidf(std::span<const std::string> texts, int max_ngram,
                     const std::unordered_set<std::string>& stopwords);

inline SparseVector tfidf_transform(const TfidfModel& model, std::string_view text) {
  return model.transform(text);
}

}  // namespace sustext
