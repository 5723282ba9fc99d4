// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sustext/corpus.hpp"

namespace sustext {

enum class ScoreKind { logit, decision };

std::string_view to_string(ScoreKind k);

// Raw per-class scores for a set of passages. Rows are passages, columns
// are class ids 0..num_classes-1.
struct ScoreMatrix {
  std::vector<std::string> passage_ids;
  std::vector<ScoreKind> kinds;  // per row
  std::vector<std::vector<double>> scores;
  std::size_t num_classes = LabelSchema::kNumClasses;

  std::size_t rows() const { return passage_ids.size(); }
};

using LabelMap = std::map<std::string, LabelSet>;

struct PredictionSet {
  LabelMap labels;
  std::optional<double> threshold_used;  // unset for sign-of-decision predictions
};

inline double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

// Class c is predicted for a row iff sigmoid(score) >= threshold.
// Rejects decision-kind rows; those come from svm_predict.
PredictionSet threshold_predict(const ScoreMatrix& scores, double threshold);

// CSV with header "passage_id,kind,c0,...,c18".
ScoreMatrix read_score_csv(std::istream& in, const std::string& source,
                           std::size_t num_classes = LabelSchema::kNumClasses);
ScoreMatrix import_scores(const std::filesystem::path& path,
                          std::size_t num_classes = LabelSchema::kNumClasses);
void write_score_csv(std::ostream& out, const ScoreMatrix& scores);
void export_scores(const std::filesystem::path& path, const ScoreMatrix& scores);

}  // namespace sustext
