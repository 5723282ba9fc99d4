// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sustext/corpus.hpp"

namespace sustext {

struct KeywordMatches {
  std::set<std::string> brands;
  std::map<ClassId, std::set<std::string>> issues;

  bool empty() const { return brands.empty() && issues.empty(); }
};

// Case-insensitive whole-word phrase matcher over a lexicon. Keywords are
// matched on the lowercased, whitespace-collapsed text; a keyword edge
// that is a word character must sit next to a non-word character or the
// text boundary.
class KeywordMatcher {
 public:
  explicit KeywordMatcher(const KeywordLexicon& lexicon);

  KeywordMatches match(std::string_view text) const;

  // Class ids with at least one issue keyword in `text`.
  LabelSet classes(std::string_view text) const;

 private:
  struct Entry {
    std::string normalized;
    std::string original;
  };

  static bool contains(std::string_view normalized_text, std::string_view keyword);

  std::vector<Entry> brands_;
  std::vector<std::pair<ClassId, Entry>> issues_;
};

// Returns true when `phrase` occurs in `text` at word boundaries under the
// matcher's normalization.
bool contains_phrase(std::string_view text, std::string_view phrase);

}  // namespace sustext
