// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "sustext/corpus.hpp"
#include "sustext/tfidf.hpp"

namespace sustext {

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;

  double decision(const SparseVector& x) const;
};

struct SvmOptions {
  // Stop once the duality gap is at most tolerance * max(1, primal),
  // which bounds the primal suboptimality by the same amount.
  double tolerance = 1e-5;
  std::size_t max_epochs = 10000;
  std::uint64_t seed = 0;        // visiting order of the dual coordinates
};

// L1-loss (hinge) linear SVM trained by dual coordinate descent.
//   min 1/2 (|w|^2 + b^2) + C sum_i max(0, 1 - y_i (w.x_i + b))
// The bias is an extra constant-1 feature and is regularized with w.
// `labels` holds +1 / -1. One-sign input is legal and solved the same
// way, so degenerate classes never abort training.
LinearModel train_linear_svm(std::span<const SparseVector> x, std::span<const int> labels,
                             std::size_t dimension, double c, const SvmOptions& options = {});

double svm_primal_objective(const LinearModel& model, std::span<const SparseVector> x,
                            std::span<const int> labels, double c);

// One binary SVM per schema class.
struct OvrSvmEnsemble {
  std::vector<LinearModel> classes;
  double c = 1.0;
  std::size_t dimension = 0;
};

OvrSvmEnsemble train_ovr_svm(std::span<const SparseVector> x, std::span<const LabelSet> y, double c,
                             std::size_t dimension, std::size_t num_classes = LabelSchema::kNumClasses,
                             const SvmOptions& options = {});

struct SvmPrediction {
  std::vector<double> scores;  // one per class
  LabelSet labels;             // classes with score > 0
};

SvmPrediction svm_predict(const OvrSvmEnsemble& model, const SparseVector& x);

}  // namespace sustext
