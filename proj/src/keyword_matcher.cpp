// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/keyword_matcher.hpp"

#include "sustext/text.hpp"

namespace sustext {

KeywordMatcher::KeywordMatcher(const KeywordLexicon& lexicon) {
  for (const auto& b : lexicon.brands) brands_.push_back({text::normalize_phrase(b), b});
  for (const auto& [class_id, keywords] : lexicon.issue_keywords) {
    for (const auto& k : keywords) issues_.emplace_back(class_id, Entry{text::normalize_phrase(k), k});
  }
}

bool KeywordMatcher::contains(std::string_view haystack, std::string_view keyword) {
  if (keyword.empty()) return false;
  const bool word_start = text::is_word_code_point(text::code_point_at(keyword, 0));
  const bool word_end = text::is_word_code_point(text::code_point_before(keyword, keyword.size()));
  for (std::size_t pos = haystack.find(keyword); pos != std::string_view::npos;
       pos = haystack.find(keyword, pos + 1)) {
    const std::size_t end = pos + keyword.size();
    const bool left_ok = !word_start || pos == 0 || !text::is_word_code_point(text::code_point_before(haystack, pos));
    const bool right_ok =
        !word_end || end == haystack.size() || !text::is_word_code_point(text::code_point_at(haystack, end));
    if (left_ok && right_ok) return true;
  }
  return false;
}

KeywordMatches KeywordMatcher::match(std::string_view input) const {
  const std::string normalized = text::normalize_phrase(input);
  KeywordMatches out;
  for (const auto& b : brands_) {
    if (contains(normalized, b.normalized)) out.brands.insert(b.original);
  }
  for (const auto& [class_id, entry] : issues_) {
    if (contains(normalized, entry.normalized)) out.issues[class_id].insert(entry.original);
  }
  return out;
}

LabelSet KeywordMatcher::classes(std::string_view input) const {
  const std::string normalized = text::normalize_phrase(input);
  LabelSet out;
  for (const auto& [class_id, entry] : issues_) {
    if (!out.contains(class_id) && contains(normalized, entry.normalized)) out.insert(class_id);
  }
  return out;
}

bool contains_phrase(std::string_view input, std::string_view phrase) {
  KeywordLexicon lexicon;
  lexicon.brands.emplace_back(phrase);
  return !KeywordMatcher(lexicon).match(input).brands.empty();
}

}  // namespace sustext
