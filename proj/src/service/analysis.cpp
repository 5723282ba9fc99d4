// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/service/analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "sustext/error.hpp"
#include "sustext/text.hpp"

namespace sustext::service {

std::string_view to_string(Origin o) { return o == Origin::backend ? "backend" : "upload"; }

Distribution distribution_of(std::span<const ResultPassage> passages) {
  Distribution d;
  for (const auto& p : passages) {
    for (ClassId c : p.class_ids) ++d[c];
  }
  return d;
}

LabelSet SvmClassifier::classify(const Passage& passage) const { return model_.predict(passage.text).labels; }

namespace {

std::unordered_map<std::string, const Document*> index_documents(std::span<const Document> documents) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : documents) by_id.emplace(d.id, &d);
  return by_id;
}

ResultPassage make_result(const Passage& p, LabelSet classes, const Document* doc, Origin origin) {
  ResultPassage r;
  r.passage_id = p.id;
  r.text = p.text;
  r.class_ids = std::move(classes);
  r.source_link = doc ? source_link(*doc) : std::string();
  r.origin = origin;
  return r;
}

}  // namespace

Backend build_backend(const CorpusDirectory& corpus, std::shared_ptr<const PassageClassifier> classifier) {
  if (!classifier) throw Error("backend needs a classifier");
  Backend b;
  b.schema = corpus.schema;
  b.lexicon = corpus.lexicon;
  const auto docs = index_documents(corpus.documents);
  for (const auto& p : corpus.passages) {
    LabelSet classes = classifier->classify(p);
    if (classes.empty()) continue;
    const auto it = docs.find(p.document_id);
    b.passages.push_back(make_result(p, std::move(classes), it == docs.end() ? nullptr : it->second, Origin::backend));
  }
  b.upload_classifier = std::move(classifier);
  spdlog::info("backend: {} of {} passages classified", b.passages.size(), corpus.passages.size());
  return b;
}

Backend build_backend(const CorpusDirectory& corpus, const ScoreMatrix& scores, double threshold,
                      std::shared_ptr<const PassageClassifier> upload_classifier) {
  if (!upload_classifier) throw Error("backend needs an upload classifier");
  if (scores.num_classes != corpus.schema.size()) throw Error("score matrix class count does not match the schema");
  const PredictionSet predicted = threshold_predict(scores, threshold);
  Backend b;
  b.schema = corpus.schema;
  b.lexicon = corpus.lexicon;
  const auto docs = index_documents(corpus.documents);
  std::size_t missing = 0;
  for (const auto& p : corpus.passages) {
    const auto hit = predicted.labels.find(p.id);
    if (hit == predicted.labels.end()) {
      ++missing;
      continue;
    }
    if (hit->second.empty()) continue;
    const auto it = docs.find(p.document_id);
    b.passages.push_back(make_result(p, hit->second, it == docs.end() ? nullptr : it->second, Origin::backend));
  }
  if (missing > 0) spdlog::warn("{} corpus passages have no row in the score matrix", missing);
  b.upload_classifier = std::move(upload_classifier);
  spdlog::info("backend: {} of {} passages classified at threshold {}", b.passages.size(), corpus.passages.size(),
               threshold);
  return b;
}

std::vector<ResultPassage> classify_uploads(std::span<const Document> documents, const Backend& backend) {
  if (!backend.upload_classifier) throw Error("backend has no upload classifier");
  const auto docs = index_documents(documents);
  std::vector<ResultPassage> out;
  for (const auto& p : ingest_documents(documents, backend.lexicon)) {
    LabelSet classes = backend.upload_classifier->classify(p);
    if (classes.empty()) continue;
    const auto it = docs.find(p.document_id);
    out.push_back(make_result(p, std::move(classes), it == docs.end() ? nullptr : it->second, Origin::upload));
  }
  return out;
}

AnalysisResult analyze(std::span<const Document> uploads, const Backend& backend, AnalyzeSources sources) {
  if (!sources.use_uploads && !sources.use_backend) throw Error("select at least one data source");
  AnalysisResult r;
  if (sources.use_uploads) {
    r.passages = classify_uploads(uploads, backend);
    if (r.passages.empty()) r.message = std::string(kNoClassifiedUploadsMessage);
  }
  if (sources.use_backend) r.passages.insert(r.passages.end(), backend.passages.begin(), backend.passages.end());
  r.distribution = distribution_of(r.passages);
  return r;
}

std::vector<MatchSpan> find_match_spans(std::string_view text, std::string_view query) {
  std::vector<MatchSpan> spans;
  if (query.empty() || query.size() > text.size()) return spans;
  // ASCII folding keeps byte lengths, so byte offsets carry over.
  const std::string hay = text::ascii_lower(text);
  const std::string needle = text::ascii_lower(query);
  std::size_t from = 0;
  std::size_t cp_base = 0;
  std::size_t byte_base = 0;
  while (true) {
    const std::size_t pos = hay.find(needle, from);
    if (pos == std::string::npos) break;
    const std::size_t end = pos + needle.size();
    // Skip matches that start or end inside a multi-byte sequence.
    const auto is_continuation = [&](std::size_t i) {
      return i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80;
    };
    if (is_continuation(pos) || is_continuation(end)) {
      from = pos + 1;
      continue;
    }
    const std::size_t start_cp = cp_base + text::code_point_offset(text.substr(byte_base), pos - byte_base);
    const std::size_t end_cp = start_cp + text::code_point_offset(text.substr(pos), needle.size());
    spans.emplace_back(start_cp, end_cp);
    cp_base = end_cp;
    byte_base = end;
    from = end;
  }
  return spans;
}

ResultPage query_results(const AnalysisResult& result, const SearchQuery& query) {
  if (query.page < 1) throw Error("page must be at least 1");
  if (query.page_size < 1 || query.page_size > SearchQuery::kMaxPageSize) throw Error("page_size must be in [1, 500]");

  std::vector<ResultRow> matched;
  for (const auto& p : result.passages) {
    if (query.class_filter && !p.class_ids.contains(*query.class_filter)) continue;
    ResultRow row{&p, {}};
    if (!query.text_query.empty()) {
      row.spans = find_match_spans(p.text, query.text_query);
      if (row.spans.empty()) continue;
    }
    matched.push_back(std::move(row));
  }

  ResultPage page;
  page.page = query.page;
  page.page_size = query.page_size;
  page.total = matched.size();
  for (const auto& row : matched) {
    for (ClassId c : row.passage->class_ids) ++page.distribution[c];
  }
  const std::size_t first = std::min(matched.size(), (query.page - 1) * query.page_size);
  const std::size_t last = std::min(matched.size(), first + query.page_size);
  page.rows.assign(std::make_move_iterator(matched.begin() + static_cast<std::ptrdiff_t>(first)),
                   std::make_move_iterator(matched.begin() + static_cast<std::ptrdiff_t>(last)));
  if (matched.empty()) {
    page.message = result.message && !query.class_filter && query.text_query.empty() ? *result.message
                                                                                      : std::string(kNoResultsMessage);
  } else if (result.message) {
    page.message = result.message;
  }
  return page;
}

}  // namespace sustext::service
