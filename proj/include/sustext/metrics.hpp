// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sustext/scores.hpp"

namespace sustext {

struct ClassCount {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t support() const { return tp + fn; }
  friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

struct ClassCounts {
  std::vector<ClassCount> per_class;  // indexed by class id
};

// Throws when the passage ids of `pred` and `gold` differ (the message
// lists the symmetric difference) or a class id is out of range.
ClassCounts class_counts(const PredictionSet& pred, const LabelMap& gold,
                         std::size_t num_classes = LabelSchema::kNumClasses);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  std::vector<Prf> per_class;
  std::vector<std::int64_t> support;
  Prf micro;
  Prf macro;
  Prf weighted;

  // "micro_f1=0.8" lines: micro, macro, weighted, then per class.
  std::string to_key_value() const;
  nlohmann::json to_json() const;
};

// Precision, recall and F1 per class plus micro, macro and
// support-weighted averages. Every ratio with a zero denominator is 0.
// Averages are accumulated in exact rational arithmetic and rounded to
// double once.
MetricsReport evaluate(const PredictionSet& pred, const LabelMap& gold,
                       std::size_t num_classes = LabelSchema::kNumClasses);
MetricsReport report_from_counts(const ClassCounts& counts);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // population standard deviation
};

MeanStd mean_std(std::span<const double> values);

}  // namespace sustext
