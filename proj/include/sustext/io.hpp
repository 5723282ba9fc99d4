// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sustext/corpus.hpp"

namespace sustext {

using json = nlohmann::json;

json to_json(const Document& d);
Document document_from_json(const json& j);

// Passage fields plus "gold_labels" when present. Sentence indices are
// written as "sentence_indices": [first, last].
json to_json(const Passage& p);
Passage passage_from_json(const json& j);

json to_json(const LabelSchema& schema);
LabelSchema schema_from_json(const json& j);

json to_json(const KeywordLexicon& lexicon);
KeywordLexicon lexicon_from_json(const json& j);

json to_json(const DatasetSplit& split);
DatasetSplit split_from_json(const json& j);

json to_json(const IngestReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
json read_json_file(const std::filesystem::path& path);

// Calls `fn(record, line_number)` for every non-blank line. Parse errors
// and exceptions thrown by `fn` are rethrown as ParseError with the line.
void for_each_jsonl(std::istream& in, const std::string& source,
                    const std::function<void(const json&, std::size_t)>& fn);

std::vector<Document> read_documents_jsonl(std::istream& in, const std::string& source);
std::vector<Passage> read_passages_jsonl(const std::filesystem::path& path);
void write_passages_jsonl(const std::filesystem::path& path, const std::vector<Passage>& passages);
void write_documents_jsonl(const std::filesystem::path& path, const std::vector<Document>& documents);

}  // namespace sustext
