// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/io.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "sustext/error.hpp"

namespace sustext {

namespace {

std::optional<std::string> optional_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(std::string("missing field \"") + key + "\"");
  return *it;
}

}  // namespace

json to_json(const Document& d) {
  json j = {{"id", d.id}, {"title", d.title}, {"source_type", std::string(to_string(d.source_type))}};
  if (d.doi) j["doi"] = *d.doi;
  if (d.website) j["website"] = *d.website;
  if (d.filename) j["filename"] = *d.filename;
  j["text"] = d.text;
  return j;
}

Document document_from_json(const json& j) {
  if (!j.is_object()) throw Error("document record must be a JSON object");
  Document d;
  d.id = require(j, "id").get<std::string>();
  d.title = j.value("title", std::string());
  d.source_type = parse_source_type(require(j, "source_type").get<std::string>());
  d.doi = optional_string(j, "doi");
  d.website = optional_string(j, "website");
  d.filename = optional_string(j, "filename");
  d.text = require(j, "text").get<std::string>();
  d.validate();
  return d;
}

json to_json(const Passage& p) {
  json issues = json::object();
  for (const auto& [c, kws] : p.matched_issue_keywords) issues[std::to_string(c)] = kws;
  json j = {{"id", p.id},
            {"document_id", p.document_id},
            {"sentence_indices", {p.first_sentence, p.last_sentence}},
            {"text", p.text},
            {"matched_brands", p.matched_brands},
            {"matched_issue_keywords", issues}};
  if (p.gold_labels) j["gold_labels"] = *p.gold_labels;
  return j;
}

Passage passage_from_json(const json& j) {
  if (!j.is_object()) throw Error("passage record must be a JSON object");
  Passage p;
  p.id = require(j, "id").get<std::string>();
  p.document_id = j.value("document_id", std::string());
  if (const auto it = j.find("sentence_indices"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) throw Error("sentence_indices must be [first, last]");
    p.first_sentence = (*it)[0].get<int>();
    p.last_sentence = (*it)[1].get<int>();
    if (p.first_sentence < 0 || p.last_sentence < p.first_sentence) throw Error("invalid sentence_indices");
  }
  p.text = require(j, "text").get<std::string>();
  if (const auto it = j.find("matched_brands"); it != j.end()) p.matched_brands = it->get<std::set<std::string>>();
  if (const auto it = j.find("matched_issue_keywords"); it != j.end()) {
    for (const auto& [key, value] : it->items()) {
      p.matched_issue_keywords[std::stoi(key)] = value.get<std::set<std::string>>();
    }
  }
  if (const auto it = j.find("gold_labels"); it != j.end() && !it->is_null()) {
    p.gold_labels = it->get<LabelSet>();
  }
  return p;
}

json to_json(const LabelSchema& schema) {
  json classes = json::array();
  for (const auto& c : schema.classes()) {
    classes.push_back({{"class_id", c.class_id}, {"name", c.name}, {"dimension", std::string(to_string(c.dimension))}});
  }
  return {{"classes", classes}};
}

LabelSchema schema_from_json(const json& j) {
  std::vector<LabelClass> classes;
  for (const auto& c : require(j, "classes")) {
    LabelClass lc;
    lc.class_id = require(c, "class_id").get<int>();
    lc.name = require(c, "name").get<std::string>();
    const auto dim = require(c, "dimension").get<std::string>();
    if (dim == "social") {
      lc.dimension = Dimension::social;
    } else if (dim == "environmental") {
      lc.dimension = Dimension::environmental;
    } else {
      throw Error("unknown dimension '" + dim + "'");
    }
    classes.push_back(std::move(lc));
  }
  return LabelSchema(std::move(classes));
}

json to_json(const KeywordLexicon& lexicon) {
  json issues = json::object();
  for (const auto& [c, kws] : lexicon.issue_keywords) issues[std::to_string(c)] = kws;
  return {{"brands", lexicon.brands}, {"issues", issues}};
}

KeywordLexicon lexicon_from_json(const json& j) {
  KeywordLexicon lexicon;
  lexicon.brands = j.value("brands", std::vector<std::string>{});
  for (const auto& [key, value] : require(j, "issues").items()) {
    std::size_t consumed = 0;
    int id = 0;
    try {
      id = std::stoi(key, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != key.size()) throw Error("lexicon issue key '" + key + "' is not a class id");
    lexicon.issue_keywords[id] = value.get<std::vector<std::string>>();
  }
  return lexicon;
}

json to_json(const DatasetSplit& split) {
  return {{"seed", split.seed}, {"train", split.train_ids}, {"validation", split.val_ids}, {"test", split.test_ids}};
}

DatasetSplit split_from_json(const json& j) {
  DatasetSplit s;
  s.seed = j.value("seed", std::uint64_t{0});
  s.train_ids = require(j, "train").get<std::vector<std::string>>();
  s.val_ids = require(j, "validation").get<std::vector<std::string>>();
  s.test_ids = require(j, "test").get<std::vector<std::string>>();
  return s;
}

json to_json(const IngestReport& r) {
  json classes = json::object();
  for (const auto& [c, n] : r.class_keyword_hits) classes[std::to_string(c)] = n;
  return {{"documents_total", r.documents_total},
          {"documents_non_english", r.documents_non_english},
          {"passages_total", r.passages_total},
          {"passages_kept", r.passages_kept},
          {"passages_dropped", r.passages_dropped},
          {"brand_hits", r.brand_hits},
          {"class_keyword_hits", classes}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("write failed for " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  try {
    return json::parse(content);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

void for_each_jsonl(std::istream& in, const std::string& source,
                    const std::function<void(const json&, std::size_t)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      fn(json::parse(line), line_no);
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
}

std::vector<Document> read_documents_jsonl(std::istream& in, const std::string& source) {
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  for_each_jsonl(in, source, [&](const json& j, std::size_t) {
    auto d = document_from_json(j);
    if (!ids.insert(d.id).second) throw Error("duplicate document id '" + d.id + "'");
    docs.push_back(std::move(d));
  });
  return docs;
}

std::vector<Passage> read_passages_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<Passage> passages;
  std::unordered_set<std::string> ids;
  for_each_jsonl(in, path.string(), [&](const json& j, std::size_t) {
    auto p = passage_from_json(j);
    if (!ids.insert(p.id).second) throw Error("duplicate passage id '" + p.id + "'");
    passages.push_back(std::move(p));
  });
  return passages;
}

void write_passages_jsonl(const std::filesystem::path& path, const std::vector<Passage>& passages) {
  std::ostringstream out;
  for (const auto& p : passages) out << to_json(p).dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  write_file(path, out.str());
}

void write_documents_jsonl(const std::filesystem::path& path, const std::vector<Document>& documents) {
  std::ostringstream out;
  for (const auto& d : documents) out << to_json(d).dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  write_file(path, out.str());
}

}  // namespace sustext
