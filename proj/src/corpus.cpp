// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "sustext/error.hpp"
#include "sustext/io.hpp"
#include "sustext/keyword_matcher.hpp"
#include "sustext/resources.hpp"
#include "sustext/rng.hpp"
#include "sustext/text.hpp"

namespace sustext {

namespace {

// English stopwords that are also everyday function words in German,
// Dutch, French or Spanish. They are ignored when detecting the language
// so that, for example, the German "in" does not count as English.
const std::unordered_set<std::string>& language_ambiguous_words() {
  static const std::unordered_set<std::string> words = {"a",  "all", "also", "am", "an", "in", "is",
                                                        "me", "no",  "on",   "so", "was", "will"};
  return words;
}

struct Abbreviation {
  std::string token;
  bool numeric_only = false;
};

const std::vector<Abbreviation>& abbreviations() {
  static const std::vector<Abbreviation> list = [] {
    std::vector<Abbreviation> out;
    std::istringstream in{std::string(resources::abbreviations())};
    std::string line;
    while (std::getline(in, line)) {
      const auto tokens = text::whitespace_tokens(line);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      out.push_back({text::ascii_lower(tokens.front()), tokens.size() > 1 && tokens[1] == "numeric"});
    }
    return out;
  }();
  return list;
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closing(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x2019 || cp == 0x201D || cp == 0xBB;
}

bool is_opening_quote(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == 0x201C || cp == 0x2018 || cp == 0xAB || cp == 0x201E;
}

bool is_uppercase(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return true;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return true;
  if (cp >= 0x100 && cp <= 0x17F) return cp % 2 == 0;
  if (cp >= 0x391 && cp <= 0x3A9) return true;
  if (cp >= 0x400 && cp <= 0x42F) return true;
  return false;
}

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

// Token that ends at `period` (inclusive), without leading brackets or
// quotes, lowercased.
std::string token_ending_at(std::string_view s, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !text::is_ascii_space(s[start - 1])) --start;
  std::string_view token = s.substr(start, period - start + 1);
  while (!token.empty() && (token.front() == '(' || token.front() == '[' || token.front() == '"' ||
                            token.front() == '\'')) {
    token.remove_prefix(1);
  }
  return text::ascii_lower(token);
}

bool suppressed_by_abbreviation(std::string_view s, std::size_t period, char32_t next) {
  const std::string token = token_ending_at(s, period);
  for (const auto& abbr : abbreviations()) {
    if (abbr.token == token) return !abbr.numeric_only || is_digit(next);
  }
  return false;
}

}  // namespace

std::string_view to_string(SourceType t) {
  switch (t) {
    case SourceType::scientific: return "scientific";
    case SourceType::ngo: return "ngo";
    case SourceType::upload: return "upload";
  }
  return "upload";
}

SourceType parse_source_type(std::string_view s) {
  if (s == "scientific") return SourceType::scientific;
  if (s == "ngo") return SourceType::ngo;
  if (s == "upload") return SourceType::upload;
  throw Error("unknown source_type '" + std::string(s) + "'");
}

std::string_view to_string(Dimension d) { return d == Dimension::social ? "social" : "environmental"; }

void Document::validate() const {
  if (id.empty()) throw Error("document id must not be empty");
  const auto missing = [](const std::optional<std::string>& v) { return !v || v->empty(); };
  switch (source_type) {
    case SourceType::scientific:
      if (missing(doi)) throw Error("document '" + id + "': scientific source requires a doi");
      break;
    case SourceType::ngo:
      if (missing(website)) throw Error("document '" + id + "': ngo source requires a website");
      break;
    case SourceType::upload:
      if (missing(filename)) throw Error("document '" + id + "': upload source requires a filename");
      break;
  }
}

LabelSchema::LabelSchema(std::vector<LabelClass> classes) : classes_(std::move(classes)) {
  if (classes_.size() != kNumClasses) {
    throw Error("label schema must define exactly 19 classes, got " + std::to_string(classes_.size()));
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const LabelClass& a, const LabelClass& b) { return a.class_id < b.class_id; });
  std::size_t social = 0;
  std::unordered_set<std::string> names;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].class_id != static_cast<ClassId>(i)) {
      throw Error("label schema class ids must be 0..18 without gaps");
    }
    if (classes_[i].name.empty() || !names.insert(classes_[i].name).second) {
      throw Error("label schema class names must be unique and non-empty: '" + classes_[i].name + "'");
    }
    if (classes_[i].dimension == Dimension::social) ++social;
  }
  if (social != kNumSocial) {
    throw Error("label schema must have 11 social and 8 environmental classes, got " + std::to_string(social) +
                " social");
  }
}

const LabelSchema& LabelSchema::builtin() {
  static const LabelSchema schema = schema_from_json(json::parse(resources::default_schema_json()));
  return schema;
}

const LabelClass& LabelSchema::at(ClassId id) const {
  if (!contains(id)) throw Error("unknown class id " + std::to_string(id));
  return classes_[static_cast<std::size_t>(id)];
}

std::optional<ClassId> LabelSchema::resolve(std::string_view key) const {
  if (key.empty()) return std::nullopt;
  if (std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (key.size() > 3) return std::nullopt;
    const int id = std::stoi(std::string(key));
    return contains(id) ? std::optional<ClassId>(id) : std::nullopt;
  }
  const std::string lowered = text::ascii_lower(key);
  std::optional<ClassId> prefix_match;
  int prefix_hits = 0;
  for (const auto& c : classes_) {
    const std::string name = text::ascii_lower(c.name);
    if (name == lowered) return c.class_id;
    if (name.starts_with(lowered)) {
      prefix_match = c.class_id;
      ++prefix_hits;
    }
  }
  return prefix_hits == 1 ? prefix_match : std::nullopt;
}

void KeywordLexicon::validate(const LabelSchema& schema) const {
  for (const auto& [class_id, keywords] : issue_keywords) {
    if (!schema.contains(class_id)) {
      throw Error("lexicon references class id " + std::to_string(class_id) + " which is not in the schema");
    }
    for (const auto& k : keywords) {
      if (text::normalize_phrase(k).empty()) throw Error("lexicon contains an empty keyword");
    }
  }
  for (const auto& c : schema.classes()) {
    const auto it = issue_keywords.find(c.class_id);
    if (it == issue_keywords.end() || it->second.empty()) {
      throw Error("lexicon has no keyword for class " + std::to_string(c.class_id) + " (" + c.name + ")");
    }
  }
  for (const auto& b : brands) {
    if (text::normalize_phrase(b).empty()) throw Error("lexicon contains an empty brand");
  }
}

const KeywordLexicon& KeywordLexicon::builtin() {
  static const KeywordLexicon lexicon = [] {
    auto l = lexicon_from_json(json::parse(resources::default_lexicon_json()));
    l.validate(LabelSchema::builtin());
    return l;
  }();
  return lexicon;
}

std::vector<Document> load_documents(const std::filesystem::path& path, DocumentFormat format) {
  namespace fs = std::filesystem;
  if (format == DocumentFormat::jsonl) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return read_documents_jsonl(in, path.string());
  }

  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& f : files) {
    Document d;
    d.filename = f.filename().string();
    d.id = *d.filename;
    d.title = f.stem().string();
    d.source_type = SourceType::upload;
    d.text = read_file(f);
    docs.push_back(std::move(d));
  }
  return docs;
}

bool is_english(std::string_view text) {
  constexpr std::size_t kMaxTokens = 200;
  constexpr std::size_t kMinTokens = 10;
  constexpr double kMinRatio = 0.05;

  auto tokens = text::whitespace_tokens(text);
  if (tokens.size() > kMaxTokens) tokens.resize(kMaxTokens);
  if (tokens.size() < kMinTokens) return true;

  const auto& stopwords = text::english_stopwords();
  const auto& ambiguous = language_ambiguous_words();
  std::size_t hits = 0;
  for (auto token : tokens) {
    const auto words = text::word_tokens(token);
    if (words.size() != 1) continue;
    if (stopwords.contains(words.front()) && !ambiguous.contains(words.front())) ++hits;
  }
  return static_cast<double>(hits) >= kMinRatio * static_cast<double>(tokens.size());
}

std::vector<SentenceSpan> segment_sentences(std::string_view s) {
  std::vector<SentenceSpan> spans;
  std::size_t i = 0;
  while (i < s.size() && text::is_ascii_space(s[i])) ++i;
  std::size_t start = i;

  while (i < s.size()) {
    if (!is_terminator(s[i])) {
      ++i;
      continue;
    }
    const std::size_t terminator = i;
    std::size_t end = i;
    while (end < s.size() && is_terminator(s[end])) ++end;
    while (end < s.size()) {
      std::size_t pos = end;
      const char32_t cp = text::decode_utf8(s, pos);
      if (!is_closing(cp)) break;
      end = pos;
    }
    if (end >= s.size() || !text::is_ascii_space(s[end])) {
      i = end;
      continue;
    }
    std::size_t next = end;
    while (next < s.size() && text::is_ascii_space(s[next])) ++next;
    if (next >= s.size()) break;
    const char32_t next_cp = text::code_point_at(s, next);
    const bool starts_sentence = is_uppercase(next_cp) || is_digit(next_cp) || is_opening_quote(next_cp);
    // Only a single period can end an abbreviation; "..." and "?!" cannot.
    const bool lone_period = s[terminator] == '.' && !is_terminator(s[terminator + 1]);
    if (!starts_sentence || (lone_period && suppressed_by_abbreviation(s, terminator, next_cp))) {
      i = end;
      continue;
    }
    spans.push_back({start, end});
    start = next;
    i = next;
  }

  std::size_t last = s.size();
  while (last > start && text::is_ascii_space(s[last - 1])) --last;
  if (last > start) spans.push_back({start, last});
  return spans;
}

std::vector<Passage> window_passages(const Document& document, int window) {
  if (window < 1) throw Error("window must be at least 1");
  const auto spans = segment_sentences(document.text);
  std::vector<Passage> out;
  const auto n = static_cast<int>(spans.size());
  for (int first = 0, k = 0; first < n; first += window, ++k) {
    const int last = std::min(first + window, n) - 1;
    Passage p;
    p.id = document.id + "#" + std::to_string(k);
    p.document_id = document.id;
    p.first_sentence = first;
    p.last_sentence = last;
    const auto begin = spans[static_cast<std::size_t>(first)].begin;
    p.text = document.text.substr(begin, spans[static_cast<std::size_t>(last)].end - begin);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Passage> filter_passages(std::vector<Passage> passages, const KeywordLexicon& lexicon) {
  const KeywordMatcher matcher(lexicon);
  std::vector<Passage> kept;
  for (auto& p : passages) {
    auto matches = matcher.match(p.text);
    if (matches.empty()) continue;
    p.matched_brands = std::move(matches.brands);
    p.matched_issue_keywords = std::move(matches.issues);
    kept.push_back(std::move(p));
  }
  return kept;
}

DatasetSplit split_dataset(std::span<const Passage> labeled, std::uint64_t seed) {
  const std::size_t n = labeled.size();
  if (n < 10) throw Error("split needs at least 10 labeled passages, got " + std::to_string(n));
  std::vector<std::string> ids;
  ids.reserve(n);
  for (const auto& p : labeled) {
    if (!p.gold_labels) throw Error("passage '" + p.id + "' has no gold labels");
    ids.push_back(p.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw Error("duplicate passage ids in split input");

  Rng rng(seed);
  rng.shuffle(std::span<std::string>(ids));

  const std::size_t pool = n * 7 / 10;
  const std::size_t train = pool * 8 / 10;
  DatasetSplit split;
  split.seed = seed;
  split.train_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(train));
  split.val_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(train), ids.begin() + static_cast<std::ptrdiff_t>(pool));
  split.test_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(pool), ids.end());
  return split;
}

std::vector<Passage> ingest_documents(std::span<const Document> documents, const KeywordLexicon& lexicon,
                                      IngestReport* report) {
  IngestReport local;
  std::vector<Passage> kept;
  const KeywordMatcher matcher(lexicon);
  for (const auto& doc : documents) {
    ++local.documents_total;
    if (!is_english(doc.text)) {
      ++local.documents_non_english;
      continue;
    }
    auto windows = window_passages(doc);
    local.passages_total += windows.size();
    for (auto& p : windows) {
      auto matches = matcher.match(p.text);
      if (matches.empty()) {
        ++local.passages_dropped;
        continue;
      }
      for (const auto& b : matches.brands) ++local.brand_hits[b];
      for (const auto& [c, kws] : matches.issues) ++local.class_keyword_hits[c];
      p.matched_brands = std::move(matches.brands);
      p.matched_issue_keywords = std::move(matches.issues);
      kept.push_back(std::move(p));
    }
  }
  local.passages_kept = kept.size();
  if (report) *report = std::move(local);
  return kept;
}

}  // namespace sustext
