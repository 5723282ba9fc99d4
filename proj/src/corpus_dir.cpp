// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/corpus_dir.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sustext/error.hpp"
#include "sustext/io.hpp"

namespace sustext {

namespace {

void check_split(const DatasetSplit& split, const std::vector<Passage>& passages) {
  std::unordered_set<std::string> labeled;
  for (const auto& p : passages) {
    if (p.gold_labels) labeled.insert(p.id);
  }
  std::unordered_set<std::string> seen;
  for (const auto* part : {&split.train_ids, &split.val_ids, &split.test_ids}) {
    for (const auto& id : *part) {
      if (!labeled.contains(id)) throw Error("split.json references '" + id + "', which is not a labeled passage");
      if (!seen.insert(id).second) throw Error("split.json lists '" + id + "' more than once");
    }
  }
  if (seen.size() != labeled.size()) throw Error("split.json does not cover every labeled passage");
}

}  // namespace

CorpusDirectory CorpusDirectory::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("corpus directory " + dir.string() + " does not exist");
  CorpusDirectory c;
  c.schema = schema_from_json(read_json_file(dir / "schema.json"));
  c.lexicon = lexicon_from_json(read_json_file(dir / "lexicon.json"));
  c.lexicon.validate(c.schema);
  c.documents = load_documents(dir / "documents.jsonl", DocumentFormat::jsonl);
  c.passages = read_passages_jsonl(dir / "passages.jsonl");

  std::unordered_set<std::string> doc_ids;
  for (const auto& d : c.documents) doc_ids.insert(d.id);
  for (const auto& p : c.passages) {
    if (!doc_ids.contains(p.document_id)) {
      throw Error("passage '" + p.id + "' references unknown document '" + p.document_id + "'");
    }
    if (p.gold_labels) {
      for (ClassId id : *p.gold_labels) {
        if (!c.schema.contains(id)) throw Error("passage '" + p.id + "' has gold class " + std::to_string(id) + " outside the schema");
      }
    }
  }
  if (fs::exists(dir / "split.json")) {
    c.split = split_from_json(read_json_file(dir / "split.json"));
    check_split(*c.split, c.passages);
  }
  return c;
}

void CorpusDirectory::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file(dir / "schema.json", to_json(schema).dump(2) + "\n");
  write_file(dir / "lexicon.json", to_json(lexicon).dump(2) + "\n");
  write_documents_jsonl(dir / "documents.jsonl", documents);
  write_passages_jsonl(dir / "passages.jsonl", passages);
  if (split) {
    write_file(dir / "split.json", to_json(*split).dump(2) + "\n");
  } else {
    std::filesystem::remove(dir / "split.json");
  }
}

const Document* CorpusDirectory::find_document(const std::string& id) const {
  const auto it = std::find_if(documents.begin(), documents.end(), [&](const Document& d) { return d.id == id; });
  return it == documents.end() ? nullptr : &*it;
}

bool CorpusDirectory::has_labels() const {
  return std::any_of(passages.begin(), passages.end(), [](const Passage& p) { return p.gold_labels.has_value(); });
}

std::string source_link(const Document& document) {
  switch (document.source_type) {
    case SourceType::scientific: return "https://doi.org/" + document.doi.value_or("");
    case SourceType::ngo: return document.website.value_or("");
    case SourceType::upload: return document.filename.value_or("");
  }
  return {};
}

}  // namespace sustext
