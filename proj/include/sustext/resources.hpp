// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <string_view>

// Text of the files under data/, compiled into the library.
namespace sustext::resources {

std::string_view stopwords_en();
std::string_view abbreviations();
std::string_view default_schema_json();
std::string_view default_lexicon_json();
std::string_view svm_space_json();
std::string_view bert_space_json();

}  // namespace sustext::resources
