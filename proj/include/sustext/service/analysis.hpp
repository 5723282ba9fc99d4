// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sustext/classifiers.hpp"
#include "sustext/corpus.hpp"
#include "sustext/corpus_dir.hpp"
#include "sustext/keyword_matcher.hpp"
#include "sustext/scores.hpp"

namespace sustext::service {

enum class Origin { backend, upload };

std::string_view to_string(Origin o);

struct ResultPassage {
  std::string passage_id;
  std::string text;
  LabelSet class_ids;  // never empty
  std::string source_link;
  Origin origin = Origin::backend;
};

using Distribution = std::map<ClassId, std::size_t>;

// Passage count per class; a multi-label passage counts once per class.
Distribution distribution_of(std::span<const ResultPassage> passages);

struct AnalysisResult {
  std::vector<ResultPassage> passages;
  Distribution distribution;
  std::optional<std::string> message;

  std::size_t total() const { return passages.size(); }
};

// Assigns classes to passages that survived the keyword filter.
class PassageClassifier {
 public:
  virtual ~PassageClassifier() = default;
  virtual std::string name() const = 0;
  virtual LabelSet classify(const Passage& passage) const = 0;
};

class KeywordClassifier final : public PassageClassifier {
 public:
  explicit KeywordClassifier(const KeywordLexicon& lexicon) : matcher_(lexicon) {}
  std::string name() const override { return "keyword"; }
  LabelSet classify(const Passage& passage) const override { return matcher_.classes(passage.text); }

 private:
  KeywordMatcher matcher_;
};

class SvmClassifier final : public PassageClassifier {
 public:
  explicit SvmClassifier(SvmPipeline model) : model_(std::move(model)) {}
  std::string name() const override { return "svm"; }
  LabelSet classify(const Passage& passage) const override;

 private:
  SvmPipeline model_;
};

// Immutable backend data shared by all sessions.
struct Backend {
  LabelSchema schema = LabelSchema::builtin();
  KeywordLexicon lexicon;
  std::vector<ResultPassage> passages;  // classified, each with >= 1 class
  std::shared_ptr<const PassageClassifier> upload_classifier;
};

// Classifies the corpus passages with `classifier`.
Backend build_backend(const CorpusDirectory& corpus, std::shared_ptr<const PassageClassifier> classifier);

// Labels the corpus passages from a score matrix and a threshold; uploads
// are classified with `upload_classifier`. Passages absent from the
// matrix are skipped with a warning.
Backend build_backend(const CorpusDirectory& corpus, const ScoreMatrix& scores, double threshold,
                      std::shared_ptr<const PassageClassifier> upload_classifier);

// Runs English filter, windowing, keyword filter and classification over
// uploaded documents; only passages with at least one class are kept.
std::vector<ResultPassage> classify_uploads(std::span<const Document> documents, const Backend& backend);

struct AnalyzeSources {
  bool use_uploads = false;
  bool use_backend = false;
};

// Merges classified uploads with backend passages. Throws sustext::Error
// when neither source is selected.
AnalysisResult analyze(std::span<const Document> uploads, const Backend& backend, AnalyzeSources sources);

struct SearchQuery {
  std::optional<ClassId> class_filter;
  std::string text_query;
  std::size_t page = 1;
  std::size_t page_size = 50;

  static constexpr std::size_t kMaxPageSize = 500;
};

using MatchSpan = std::pair<std::size_t, std::size_t>;

// Sorted, non-overlapping occurrences of `query` in `text`, matched
// case-insensitively (ASCII folding), as [start, end) code point offsets.
std::vector<MatchSpan> find_match_spans(std::string_view text, std::string_view query);

struct ResultRow {
  const ResultPassage* passage = nullptr;
  std::vector<MatchSpan> spans;
};

struct ResultPage {
  Distribution distribution;  // over the whole filtered set
  std::vector<ResultRow> rows;
  std::size_t total = 0;  // filtered count before pagination
  std::size_t page = 1;
  std::size_t page_size = 50;
  std::optional<std::string> message;
};

// Class filter first, then the text filter, then pagination. The page
// borrows passages from `result`.
ResultPage query_results(const AnalysisResult& result, const SearchQuery& query);

inline constexpr std::string_view kNoResultsMessage = "No results found.";
inline constexpr std::string_view kNoClassifiedUploadsMessage =
    "None of the uploaded passages could be assigned a sustainability class.";

}  // namespace sustext::service
