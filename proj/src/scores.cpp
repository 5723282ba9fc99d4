// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/scores.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "sustext/error.hpp"

namespace sustext {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

ScoreKind parse_kind(std::string_view s) {
  if (s == "logit") return ScoreKind::logit;
  if (s == "decision") return ScoreKind::decision;
  throw Error("unknown score kind '" + std::string(s) + "'");
}

}  // namespace

std::string_view to_string(ScoreKind k) { return k == ScoreKind::logit ? "logit" : "decision"; }

PredictionSet threshold_predict(const ScoreMatrix& scores, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw Error("threshold must be in [0, 1]");
  PredictionSet out;
  out.threshold_used = threshold;
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    if (scores.kinds[r] != ScoreKind::logit) {
      throw Error("row '" + scores.passage_ids[r] +
                  "' holds SVM decision values; thresholding applies to logits only, use svm_predict");
    }
    LabelSet& labels = out.labels[scores.passage_ids[r]];
    for (std::size_t c = 0; c < scores.scores[r].size(); ++c) {
      if (sigmoid(scores.scores[r][c]) >= threshold) labels.insert(static_cast<ClassId>(c));
    }
  }
  return out;
}

ScoreMatrix read_score_csv(std::istream& in, const std::string& source, std::size_t num_classes) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "passage_id" || header[1] != "kind") {
    throw ParseError(source, line_no, "header must start with passage_id,kind");
  }
  std::vector<std::size_t> column_class;
  std::vector<bool> seen(num_classes, false);
  for (std::size_t i = 2; i < header.size(); ++i) {
    const std::string& h = header[i];
    std::size_t id = 0;
    bool ok = h.size() > 1 && h[0] == 'c';
    if (ok) {
      const auto [ptr, ec] = std::from_chars(h.data() + 1, h.data() + h.size(), id);
      ok = ec == std::errc() && ptr == h.data() + h.size() && id < num_classes;
    }
    if (!ok) throw ParseError(source, line_no, "unknown class column '" + h + "'");
    if (seen[id]) throw ParseError(source, line_no, "duplicate class column '" + h + "'");
    seen[id] = true;
    column_class.push_back(id);
  }
  if (column_class.size() != num_classes) {
    throw ParseError(source, line_no,
                     "expected " + std::to_string(num_classes) + " class columns, got " + std::to_string(column_class.size()));
  }

  ScoreMatrix m;
  m.num_classes = num_classes;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    const std::string& id = fields[0];
    if (fields.size() != header.size()) {
      throw ParseError(source, line_no,
                       "passage '" + id + "' has " + std::to_string(fields.size() - std::min<std::size_t>(fields.size(), 2)) +
                           " scores, expected " + std::to_string(num_classes));
    }
    if (!ids.insert(id).second) throw ParseError(source, line_no, "duplicate passage '" + id + "'");
    std::vector<double> row(num_classes);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      double v = 0.0;
      const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (f.empty() || res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(v)) {
        throw ParseError(source, line_no, "passage '" + id + "': invalid score '" + f + "'");
      }
      row[column_class[i - 2]] = v;
    }
    try {
      m.kinds.push_back(parse_kind(fields[1]));
    } catch (const Error& e) {
      throw ParseError(source, line_no, "passage '" + id + "': " + e.what());
    }
    m.passage_ids.push_back(id);
    m.scores.push_back(std::move(row));
  }
  return m;
}

ScoreMatrix import_scores(const std::filesystem::path& path, std::size_t num_classes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return read_score_csv(in, path.string(), num_classes);
}

void write_score_csv(std::ostream& out, const ScoreMatrix& m) {
  out << "passage_id,kind";
  for (std::size_t c = 0; c < m.num_classes; ++c) out << ",c" << c;
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv_escape(m.passage_ids[r]) << ',' << to_string(m.kinds[r]);
    for (double v : m.scores[r]) {
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

void export_scores(const std::filesystem::path& path, const ScoreMatrix& scores) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  write_score_csv(out, scores);
}

}  // namespace sustext
