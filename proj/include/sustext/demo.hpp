// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sustext/corpus.hpp"

namespace sustext {

struct DemoOptions {
  std::size_t n_documents = 40;
  std::size_t passages_per_document = 5;  // relevant windows per document
  std::size_t irrelevant_per_document = 1;
  std::size_t n_non_english = 2;
};

// Synthetic labeled corpus built from the bundled schema and lexicon.
// Every relevant passage window plants exactly the issue keywords of its
// gold classes, so the keyword baseline reproduces the labels. Class
// frequencies fall off with class id; some passages carry only a brand
// and have no gold class.
struct DemoCorpus {
  std::vector<Document> documents;
  std::map<std::string, LabelSet> labels;  // passage id -> gold labels
  std::size_t expected_kept = 0;
  std::size_t expected_dropped = 0;
  std::size_t expected_non_english_documents = 0;
};

DemoCorpus generate_demo_corpus(std::uint64_t seed, const DemoOptions& options = {});

// Writes documents.jsonl, labels.jsonl, schema.json, lexicon.json and
// oracle.json into `dir`.
void write_demo_corpus(const std::filesystem::path& dir, const DemoCorpus& corpus);

}  // namespace sustext
