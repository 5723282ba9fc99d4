// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <filesystem>
#include <iosfwd>

#include "sustext/classifiers.hpp"

// Plain-text model artifacts.
//
//   tfidf_vocab.tsv   "#sustext-tfidf\tv1\tmax_ngram=<n>" header, then one
//                     "<index>\t<idf>\t<ngram>" row per column
//   stopwords.txt     one word per line
//   svm_weights.csv   "#sustext-svm,v1,C=<c>,dim=<V>" header, then one
//                     "<class_id>,<bias>,<w_0>,...,<w_V-1>" row per class
//
// Reals are written with 17 significant digits so a save/load round trip
// is exact.
namespace sustext {

void write_tfidf(std::ostream& out, const TfidfModel& model);
TfidfModel read_tfidf(std::istream& in, std::unordered_set<std::string> stopwords);

void write_svm(std::ostream& out, const OvrSvmEnsemble& model);
OvrSvmEnsemble read_svm(std::istream& in);

void save_pipeline(const std::filesystem::path& dir, const SvmPipeline& model);
SvmPipeline load_pipeline(const std::filesystem::path& dir);

}  // namespace sustext
