// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sustext {

enum class SourceType { scientific, ngo, upload };

std::string_view to_string(SourceType t);
SourceType parse_source_type(std::string_view s);

struct Document {
  std::string id;
  std::string title;
  SourceType source_type = SourceType::upload;
  std::optional<std::string> doi;
  std::optional<std::string> website;
  std::optional<std::string> filename;
  std::string text;

  // Throws sustext::Error when the source field required by
  // `source_type` is missing or empty.
  void validate() const;
};

// Byte offsets [begin, end) into the document text.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

using ClassId = int;
using LabelSet = std::set<ClassId>;

struct Passage {
  std::string id;
  std::string document_id;
  int first_sentence = 0;  // inclusive
  int last_sentence = 0;   // inclusive
  std::string text;
  std::set<std::string> matched_brands;
  std::map<ClassId, std::set<std::string>> matched_issue_keywords;
  std::optional<LabelSet> gold_labels;
};

enum class Dimension { social, environmental };

std::string_view to_string(Dimension d);

struct LabelClass {
  ClassId class_id = 0;
  std::string name;
  Dimension dimension = Dimension::social;
};

// The 19 sustainability classes: 11 social, 8 environmental, ids 0..18.
class LabelSchema {
 public:
  static constexpr std::size_t kNumClasses = 19;
  static constexpr std::size_t kNumSocial = 11;
  static constexpr std::size_t kNumEnvironmental = 8;

  // Validates on construction.
  explicit LabelSchema(std::vector<LabelClass> classes);

  // data/schema.json
  static const LabelSchema& builtin();

  const std::vector<LabelClass>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  bool contains(ClassId id) const { return id >= 0 && static_cast<std::size_t>(id) < classes_.size(); }
  const LabelClass& at(ClassId id) const;

  // Accepts a numeric id, an exact name, or an unambiguous
  // case-insensitive name prefix ("economic").
  std::optional<ClassId> resolve(std::string_view key) const;

 private:
  std::vector<LabelClass> classes_;
};

struct KeywordLexicon {
  std::vector<std::string> brands;
  std::map<ClassId, std::vector<std::string>> issue_keywords;

  // Every referenced class exists and every schema class has a keyword.
  void validate(const LabelSchema& schema) const;

  // data/lexicon.json
  static const KeywordLexicon& builtin();
};

struct DatasetSplit {
  std::uint64_t seed = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;
};

enum class DocumentFormat { jsonl, txt };

// jsonl: one Document per line. txt: `path` is a .txt file or a directory
// of them; each file becomes an upload Document named after the file.
std::vector<Document> load_documents(const std::filesystem::path& path, DocumentFormat format);

// True when at least 5% of the first 200 whitespace tokens are English
// function words. Texts with fewer than 10 tokens pass.
bool is_english(std::string_view text);

std::vector<SentenceSpan> segment_sentences(std::string_view text);

// Consecutive non-overlapping windows of `window` sentences; the last one
// may be shorter. Passage ids are "<document id>#<window index>".
std::vector<Passage> window_passages(const Document& document, int window = 3);

// Keeps passages with at least one brand or issue keyword match and
// records the matches.
std::vector<Passage> filter_passages(std::vector<Passage> passages, const KeywordLexicon& lexicon);

// Sorts by id, shuffles with Rng(seed), then takes floor(0.7 N) as the
// training pool (rest is test) and floor(0.8 M) of the pool as training
// (rest is validation). Requires N >= 10 and gold labels on every passage.
DatasetSplit split_dataset(std::span<const Passage> labeled, std::uint64_t seed);

struct IngestReport {
  std::size_t documents_total = 0;
  std::size_t documents_non_english = 0;
  std::size_t passages_total = 0;
  std::size_t passages_kept = 0;
  std::size_t passages_dropped = 0;
  std::map<std::string, std::size_t> brand_hits;
  std::map<ClassId, std::size_t> class_keyword_hits;  // kept passages per class
};

// English filter, then windowing, then keyword filtering.
std::vector<Passage> ingest_documents(std::span<const Document> documents, const KeywordLexicon& lexicon,
                                      IngestReport* report = nullptr);

}  // namespace sustext
