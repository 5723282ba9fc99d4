// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

// Low-level text helpers shared by the corpus pipeline, the TF-IDF
// analyzer and the service. Case folding is ASCII-only; everything else
// is passed through as UTF-8 bytes.
namespace sustext::text {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower(std::string_view s);

// Decodes the code point starting at `pos`; advances `pos` past it.
// Invalid sequences decode as U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view s, std::size_t& pos);

// Code point ending right before byte offset `end` (0 when end == 0).
char32_t code_point_before(std::string_view s, std::size_t end);
char32_t code_point_at(std::string_view s, std::size_t pos);

// Letters, digits and underscore. Non-ASCII code points count as word
// characters unless they fall in a punctuation or symbol block.
bool is_word_code_point(char32_t cp);

bool is_valid_utf8(std::string_view s);

// Number of code points in s[0, byte_offset).
std::size_t code_point_offset(std::string_view s, std::size_t byte_offset);

std::vector<std::string_view> whitespace_tokens(std::string_view s);

// Maximal runs of word characters, ASCII-lowercased.
std::vector<std::string> word_tokens(std::string_view s);

// Lowercases and collapses every whitespace run to one space; leading and
// trailing whitespace are dropped.
std::string normalize_phrase(std::string_view s);

// The bundled English stopword list (data/stopwords_en.txt).
const std::unordered_set<std::string>& english_stopwords();

}  // namespace sustext::text
