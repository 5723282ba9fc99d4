// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "sustext/commands.hpp"
#include "sustext/config_space.hpp"
#include "sustext/corpus.hpp"
#include "sustext/error.hpp"
#include "sustext/keyword_matcher.hpp"
#include "sustext/metrics.hpp"
#include "sustext/optimizer.hpp"
#include "sustext/scores.hpp"
#include "sustext/svm.hpp"
#include "sustext/text.hpp"
#include "sustext/tfidf.hpp"

namespace py = pybind11;
using namespace sustext;

namespace {

py::dict prf_dict(const Prf& p) {
  py::dict d;
  d["precision"] = p.precision;
  d["recall"] = p.recall;
  d["f1"] = p.f1;
  return d;
}

py::dict report_dict(const MetricsReport& r) {
  py::dict d;
  d["micro"] = prf_dict(r.micro);
  d["macro"] = prf_dict(r.macro);
  d["weighted"] = prf_dict(r.weighted);
  py::list per_class;
  for (std::size_t c = 0; c < r.per_class.size(); ++c) {
    py::dict row = prf_dict(r.per_class[c]);
    row["support"] = r.support[c];
    per_class.append(row);
  }
  d["per_class"] = per_class;
  return d;
}

SparseVector to_sparse(const std::vector<double>& dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

std::vector<SparseVector> to_sparse_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<SparseVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_sparse(r));
  return out;
}

std::size_t width(const std::vector<std::vector<double>>& rows) {
  std::size_t d = 0;
  for (const auto& r : rows) d = std::max(d, r.size());
  return d;
}

}  // namespace

PYBIND11_MODULE(_sustext, m) {
  m.doc() = "Sustainability passage mining: corpus pipeline, classifiers, metrics and tuning.";

  py::register_exception<Error>(m, "SustextError", PyExc_ValueError);

  m.def("is_english", &is_english, py::arg("text"));
  m.def(
      "segment_sentences",
      [](const std::string& text) {
        std::vector<std::string> out;
        for (const auto& s : segment_sentences(text)) out.push_back(text.substr(s.begin, s.end - s.begin));
        return out;
      },
      py::arg("text"));

  m.def(
      "keyword_classes",
      [](const std::string& text) {
        static const KeywordMatcher matcher(KeywordLexicon::builtin());
        return matcher.classes(text);
      },
      py::arg("text"), "Classes whose bundled issue keywords occur in `text`.");

  m.def(
      "class_names",
      [] {
        std::vector<std::string> names;
        for (const auto& c : LabelSchema::builtin().classes()) names.push_back(c.name);
        return names;
      });

  m.def(
      "evaluate",
      [](const LabelMap& pred, const LabelMap& gold, std::size_t num_classes) {
        return report_dict(evaluate(PredictionSet{pred, std::nullopt}, gold, num_classes));
      },
      py::arg("pred"), py::arg("gold"), py::arg("num_classes") = LabelSchema::kNumClasses);

  m.def(
      "threshold_predict",
      [](const std::map<std::string, std::vector<double>>& logits, double threshold) {
        ScoreMatrix s;
        s.num_classes = logits.empty() ? LabelSchema::kNumClasses : logits.begin()->second.size();
        for (const auto& [id, row] : logits) {
          s.passage_ids.push_back(id);
          s.kinds.push_back(ScoreKind::logit);
          s.scores.push_back(row);
        }
        return threshold_predict(s, threshold).labels;
      },
      py::arg("logits"), py::arg("threshold") = 0.33);

  py::class_<TfidfModel>(m, "TfidfModel")
      .def_property_readonly("terms", &TfidfModel::terms)
      .def_property_readonly("idf", &TfidfModel::idf)
      .def_property_readonly("max_ngram", &TfidfModel::max_ngram)
      .def("idf_of", &TfidfModel::idf_of, py::arg("term"))
      .def(
          "transform",
          [](const TfidfModel& model, const std::string& text) {
            std::map<std::string, double> out;
            for (const auto& [i, v] : model.transform(text).entries) out[model.terms()[i]] = v;
            return out;
          },
          py::arg("text"));
  m.def(
      "fit_tfidf", [](const std::vector<std::string>& texts, int max_ngram) { return fit_tfidf(texts, max_ngram); },
      py::arg("texts"), py::arg("max_ngram") = 1);

  m.def(
      "train_linear_svm",
      [](const std::vector<std::vector<double>>& x, const std::vector<int>& y, double c, std::uint64_t seed) {
        SvmOptions options;
        options.seed = seed;
        const auto model = train_linear_svm(to_sparse_rows(x), y, width(x), c, options);
        const double objective = svm_primal_objective(model, to_sparse_rows(x), y, c);
        return py::make_tuple(model.weights, model.bias, objective);
      },
      py::arg("x"), py::arg("y"), py::arg("c") = 1.0, py::arg("seed") = 0,
      "Returns (weights, bias, primal objective).");

  m.def(
      "optimize",
      [](const std::function<double(const Config&)>& objective, const std::string& space_json, std::size_t n_trials,
         std::uint64_t seed) {
        const auto space = ConfigSpace::from_json(nlohmann::json::parse(space_json));
        const auto result = optimize(objective, space, n_trials, seed);
        py::list history;
        for (const auto& t : result.history) history.append(py::make_tuple(t.config, t.objective));
        py::dict d;
        d["best_config"] = result.best.config;
        d["best_objective"] = result.best.objective;
        d["history"] = history;
        return d;
      },
      py::arg("objective"), py::arg("space_json"), py::arg("n_trials"), py::arg("seed") = 0,
      "Maximizes `objective(config: dict)` over a JSON config space.");

  m.def(
      "gen_demo", [](std::uint64_t seed, const std::filesystem::path& out) { run_gen_demo(seed, out); },
      py::arg("seed"), py::arg("out"));

  m.def(
      "ingest",
      [](const std::filesystem::path& docs, const std::filesystem::path& lexicon, const std::filesystem::path& schema,
         const std::filesystem::path& out, std::optional<std::filesystem::path> labels, std::uint64_t split_seed) {
        IngestOptions o;
        o.docs = docs;
        o.lexicon = lexicon;
        o.schema = schema;
        o.out = out;
        o.labels = std::move(labels);
        o.split_seed = split_seed;
        const auto r = run_ingest(o);
        py::dict d;
        d["documents_total"] = r.report.documents_total;
        d["documents_non_english"] = r.report.documents_non_english;
        d["passages_kept"] = r.report.passages_kept;
        d["passages_dropped"] = r.report.passages_dropped;
        d["labeled_passages"] = r.labeled_passages;
        d["split_written"] = r.split_written;
        return d;
      },
      py::arg("docs"), py::arg("lexicon"), py::arg("schema"), py::arg("out"), py::arg("labels") = py::none(),
      py::arg("split_seed") = 42);

  m.def(
      "evaluate_corpus",
      [](const std::filesystem::path& corpus, const std::string& pred, double threshold) {
        EvaluateOptions o;
        o.corpus = corpus;
        o.pred = pred;
        o.threshold = threshold;
        return report_dict(run_evaluate(o));
      },
      py::arg("corpus"), py::arg("pred") = "keyword", py::arg("threshold") = 0.33);

  m.def(
      "tune",
      [](const std::filesystem::path& corpus, std::size_t trials, std::vector<std::uint64_t> seeds,
         const std::filesystem::path& out) {
        TuneCommandOptions o;
        o.corpus = corpus;
        o.trials = trials;
        o.seeds = std::move(seeds);
        o.out = out;
        const auto s = run_tune(o);
        py::dict d;
        d["test_weighted_f1_mean"] = s.test_weighted_f1.mean;
        d["test_weighted_f1_std"] = s.test_weighted_f1.stddev;
        py::list per_seed;
        for (const auto& r : s.per_seed) {
          py::dict row;
          row["seed"] = r.seed;
          row["max_ngram"] = r.best.max_ngram;
          row["c"] = r.best.c;
          row["test_weighted_f1"] = r.test_report.weighted.f1;
          row["default_test_weighted_f1"] = r.default_test_report.weighted.f1;
          per_seed.append(row);
        }
        d["per_seed"] = per_seed;
        return d;
      },
      py::arg("corpus"), py::arg("trials") = 50, py::arg("seeds") = std::vector<std::uint64_t>{1, 2, 3, 4, 5},
      py::arg("out"));

  m.attr("__version__") = SUSTEXT_VERSION;
}
