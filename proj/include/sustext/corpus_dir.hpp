// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "sustext/corpus.hpp"

namespace sustext {

// On-disk corpus as written by `sustext ingest`:
//   schema.json, lexicon.json, documents.jsonl, passages.jsonl,
//   ingest_report.json and, for labeled corpora, split.json.
struct CorpusDirectory {
  LabelSchema schema = LabelSchema::builtin();
  KeywordLexicon lexicon;
  std::vector<Document> documents;
  std::vector<Passage> passages;
  std::optional<DatasetSplit> split;

  // Loads and validates: schema arithmetic, lexicon against schema,
  // document invariants, unique ids, passages referencing known documents,
  // gold labels inside the schema and the split covering labeled passages.
  static CorpusDirectory load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

  const Document* find_document(const std::string& id) const;
  bool has_labels() const;
};

// https://doi.org/<doi> for scientific sources, the website for NGO
// reports, the file name for uploads.
std::string source_link(const Document& document);

}  // namespace sustext
