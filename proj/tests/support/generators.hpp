// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

// Hand-rolled generators for the property tests. All draw from the
// library's portable Rng so failures reproduce from the printed seed.

#include <array>
#include <string>
#include <vector>

#include "sustext/corpus.hpp"
#include "sustext/rng.hpp"
#include "sustext/scores.hpp"

namespace sustext::testing {

inline LabelSet random_label_set(Rng& rng, int num_classes, double p = 0.3) {
  LabelSet s;
  for (int c = 0; c < num_classes; ++c) {
    if (rng.uniform01() < p) s.insert(c);
  }
  return s;
}

inline ScoreMatrix random_logit_matrix(Rng& rng, std::size_t rows, std::size_t num_classes) {
  ScoreMatrix m;
  m.num_classes = num_classes;
  for (std::size_t r = 0; r < rows; ++r) {
    m.passage_ids.push_back("p" + std::to_string(r));
    m.kinds.push_back(ScoreKind::logit);
    std::vector<double> row(num_classes);
    for (auto& v : row) v = 6.0 * rng.normal();
    m.scores.push_back(std::move(row));
  }
  return m;
}

inline std::string random_word(Rng& rng) {
  static constexpr std::array kWords = {"the",    "workers", "factory", "wage",  "was",   "report",
                                        "fair",   "cotton",  "supply",  "chain", "of",    "and",
                                        "brands", "said",    "in",      "water", "audit", "Mr."};
  return kWords[static_cast<std::size_t>(rng.below(kWords.size()))];
}

// Sentences of 3-9 words, capitalized, ended by ".", "!" or "?", joined
// by one of several whitespace runs.
inline std::string random_text(Rng& rng, std::size_t sentences) {
  static constexpr std::array kEnds = {".", ".", ".", "!", "?"};
  static constexpr std::array kGaps = {" ", "  ", "\n", " \t"};
  std::string text;
  for (std::size_t s = 0; s < sentences; ++s) {
    if (s) text += kGaps[static_cast<std::size_t>(rng.below(kGaps.size()))];
    const auto n = 3 + rng.below(7);
    for (std::uint64_t w = 0; w < n; ++w) {
      std::string word = random_word(rng);
      if (w == 0) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      if (w) text += ' ';
      text += word;
    }
    text += kEnds[static_cast<std::size_t>(rng.below(kEnds.size()))];
  }
  return text;
}

inline Document random_document(Rng& rng, const std::string& id, std::size_t sentences) {
  Document d;
  d.id = id;
  d.title = id;
  d.source_type = SourceType::upload;
  d.filename = id + ".txt";
  d.text = random_text(rng, sentences);
  return d;
}

}  // namespace sustext::testing
