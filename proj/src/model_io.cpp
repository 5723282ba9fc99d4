// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sustext/error.hpp"
#include "sustext/io.hpp"
#include "sustext/text.hpp"

namespace sustext {

namespace {

std::string fmt_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s, const std::string& source, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError(source, line, "invalid number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Value of "key=value" among header fields.
std::string header_value(const std::vector<std::string_view>& fields, std::string_view key, const std::string& source) {
  for (auto f : fields) {
    if (f.size() > key.size() && f.starts_with(key) && f[key.size()] == '=') return std::string(f.substr(key.size() + 1));
  }
  throw ParseError(source, 1, "header lacks " + std::string(key));
}

}  // namespace

void write_tfidf(std::ostream& out, const TfidfModel& model) {
  out << "#sustext-tfidf\tv1\tmax_ngram=" << model.max_ngram() << '\n';
  for (std::size_t i = 0; i < model.vocabulary_size(); ++i) {
    out << i << '\t' << fmt_real(model.idf()[i]) << '\t' << model.terms()[i] << '\n';
  }
}

TfidfModel read_tfidf(std::istream& in, std::unordered_set<std::string> stopwords) {
  const std::string source = "tfidf_vocab.tsv";
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#sustext-tfidf\tv1")) {
    throw ParseError(source, 1, "not a v1 TF-IDF vocabulary");
  }
  const int max_ngram = std::stoi(header_value(split(line, '\t'), "max_ngram", source));
  std::vector<std::string> terms;
  std::vector<double> idf;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(source, line_no, "expected index, idf and term");
    if (std::stoul(std::string(fields[0])) != terms.size()) throw ParseError(source, line_no, "indices must be dense");
    idf.push_back(parse_real(fields[1], source, line_no));
    terms.emplace_back(fields[2]);
  }
  return TfidfModel(max_ngram, std::move(terms), std::move(idf), std::move(stopwords));
}

void write_svm(std::ostream& out, const OvrSvmEnsemble& model) {
  out << "#sustext-svm,v1,C=" << fmt_real(model.c) << ",dim=" << model.dimension << '\n';
  for (std::size_t k = 0; k < model.classes.size(); ++k) {
    out << k << ',' << fmt_real(model.classes[k].bias);
    for (double w : model.classes[k].weights) out << ',' << fmt_real(w);
    out << '\n';
  }
}

OvrSvmEnsemble read_svm(std::istream& in) {
  const std::string source = "svm_weights.csv";
  std::string line;
  if (!std::getline(in, line) || !line.starts_with("#sustext-svm,v1")) {
    throw ParseError(source, 1, "not a v1 SVM weight file");
  }
  const auto header = split(line, ',');
  OvrSvmEnsemble model;
  model.c = parse_real(header_value(header, "C", source), source, 1);
  model.dimension = std::stoul(header_value(header, "dim", source));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != model.dimension + 2) throw ParseError(source, line_no, "row width does not match dim");
    if (std::stoul(std::string(fields[0])) != model.classes.size()) {
      throw ParseError(source, line_no, "class rows must be in order");
    }
    LinearModel m;
    m.bias = parse_real(fields[1], source, line_no);
    m.weights.reserve(model.dimension);
    for (std::size_t i = 2; i < fields.size(); ++i) m.weights.push_back(parse_real(fields[i], source, line_no));
    model.classes.push_back(std::move(m));
  }
  return model;
}

void save_pipeline(const std::filesystem::path& dir, const SvmPipeline& model) {
  std::filesystem::create_directories(dir);
  std::ostringstream vocab;
  write_tfidf(vocab, model.tfidf);
  write_file(dir / "tfidf_vocab.tsv", vocab.str());

  std::vector<std::string> words(model.tfidf.stopwords().begin(), model.tfidf.stopwords().end());
  std::sort(words.begin(), words.end());
  std::string stop;
  for (const auto& w : words) stop += w + "\n";
  write_file(dir / "stopwords.txt", stop);

  std::ostringstream weights;
  write_svm(weights, model.svm);
  write_file(dir / "svm_weights.csv", weights.str());
}

SvmPipeline load_pipeline(const std::filesystem::path& dir) {
  std::unordered_set<std::string> stopwords;
  {
    std::istringstream in(read_file(dir / "stopwords.txt"));
    std::string w;
    while (std::getline(in, w)) {
      if (!w.empty()) stopwords.insert(w);
    }
  }
  SvmPipeline model;
  {
    std::istringstream in(read_file(dir / "tfidf_vocab.tsv"));
    model.tfidf = read_tfidf(in, std::move(stopwords));
  }
  {
    std::istringstream in(read_file(dir / "svm_weights.csv"));
    model.svm = read_svm(in);
  }
  if (model.svm.dimension != model.tfidf.vocabulary_size()) {
    throw Error("model in " + dir.string() + ": SVM dimension does not match the vocabulary");
  }
  return model;
}

}  // namespace sustext
