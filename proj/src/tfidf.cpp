// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sustext/error.hpp"
#include "sustext/text.hpp"

namespace sustext {

namespace {

std::vector<std::string> ngrams(std::string_view input, int max_ngram,
                                const std::unordered_set<std::string>& stopwords) {
  std::vector<std::string> tokens = text::word_tokens(input);
  std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
  std::vector<std::string> out;
  out.reserve(tokens.size() * static_cast<std::size_t>(max_ngram));
  for (int n = 1; n <= max_ngram; ++n) {
    const auto width = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < width; ++k) {
        gram.push_back(' ');
        gram += tokens[i + k];
      }
      out.push_back(std::move(gram));
    }
  }
  return out;
}

}  // namespace

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto& [i, v] : entries) {
    if (i < dense.size()) sum += v * dense[i];
  }
  return sum;
}

double SparseVector::squared_norm() const {
  double sum = 0.0;
  for (const auto& [i, v] : entries) sum += v * v;
  return sum;
}

TfidfModel::TfidfModel(int max_ngram, std::vector<std::string> terms, std::vector<double> idf,
                       std::unordered_set<std::string> stopwords)
    : max_ngram_(max_ngram), terms_(std::move(terms)), idf_(std::move(idf)), stopwords_(std::move(stopwords)) {
  if (max_ngram_ < 1 || max_ngram_ > 4) throw Error("max_ngram must be in [1, 4]");
  if (terms_.size() != idf_.size()) throw Error("vocabulary and idf sizes differ");
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(idf_[i] > 0.0) || !std::isfinite(idf_[i])) throw Error("idf values must be positive and finite");
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw Error("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::int64_t TfidfModel::index_of(std::string_view term) const {
  const auto it = index_.find(std::string(term));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

double TfidfModel::idf_of(std::string_view term) const {
  const auto i = index_of(term);
  if (i < 0) throw Error("term '" + std::string(term) + "' is not in the vocabulary");
  return idf_[static_cast<std::size_t>(i)];
}

std::vector<std::string> TfidfModel::analyze(std::string_view input) const {
  return ngrams(input, max_ngram_, stopwords_);
}

SparseVector TfidfModel::transform(std::string_view input) const {
  std::map<std::uint32_t, double> counts;
  for (const auto& gram : analyze(input)) {
    const auto it = index_.find(gram);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector v;
  v.entries.reserve(counts.size());
  double norm2 = 0.0;
  for (const auto& [i, count] : counts) {
    const double value = count * idf_[i];
    norm2 += value * value;
    v.entries.emplace_back(i, value);
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : v.entries) e.second *= inv;
  }
  return v;
}

TfidfModel fit_tfidf(std::span<const std::string> texts, int max_ngram) {
  return fit_tfidf(texts, max_ngram, text::english_stopwords());
}

TfidfModel fit_tfidf(std::span<const std::string> texts, int max_ngram,
                     const std::unordered_set<std::string>& stopwords) {
  if (texts.empty()) throw Error("cannot fit TF-IDF on an empty corpus");
  if (max_ngram < 1 || max_ngram > 4) throw Error("max_ngram must be in [1, 4], got " + std::to_string(max_ngram));

  std::map<std::string, std::size_t> document_frequency;
  for (const auto& t : texts) {
    auto grams = ngrams(t, max_ngram, stopwords);
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    for (auto& g : grams) ++document_frequency[std::move(g)];
  }
  if (document_frequency.empty()) throw Error("every text is empty after stopword removal");

  const auto n = static_cast<double>(texts.size());
  std::vector<std::string> terms;
  std::vector<double> idf;
  terms.reserve(document_frequency.size());
  idf.reserve(document_frequency.size());
  for (const auto& [term, df] : document_frequency) {
    terms.push_back(term);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df))) + 1.0);
  }
  return TfidfModel(max_ngram, std::move(terms), std::move(idf), stopwords);
}

}  // namespace sustext
