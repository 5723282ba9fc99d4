// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <spdlog/spdlog.h>

#include "sustext/error.hpp"
#include "sustext/rng.hpp"

namespace sustext {

double LinearModel::decision(const SparseVector& x) const { return x.dot(weights) + bias; }

LinearModel train_linear_svm(std::span<const SparseVector> x, std::span<const int> labels, std::size_t dimension,
                             double c, const SvmOptions& options) {
  if (x.size() != labels.size()) throw Error("feature and label counts differ");
  if (x.empty()) throw Error("cannot train an SVM on zero points");
  if (!(c > 0.0)) throw Error("C must be positive");
  for (int y : labels) {
    if (y != 1 && y != -1) throw Error("SVM labels must be +1 or -1");
  }
  for (const auto& v : x) {
    if (!v.entries.empty() && v.entries.back().first >= dimension) {
      throw Error("feature index exceeds the declared dimension");
    }
  }

  LinearModel model;
  model.weights.assign(dimension, 0.0);

  const std::size_t n = x.size();
  std::vector<double> alpha(n, 0.0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = x[i].squared_norm() + 1.0;  // +1 for the bias feature

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(options.seed);

  for (std::size_t epoch = 0; epoch < options.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (const std::size_t i : order) {
      const double y = labels[i];
      const double g = y * model.decision(x[i]) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) {
        pg = std::min(g, 0.0);
      } else if (alpha[i] >= c) {
        pg = std::max(g, 0.0);
      }
      if (pg == 0.0) continue;
      const double updated = std::clamp(alpha[i] - g / diag[i], 0.0, c);
      const double delta = updated - alpha[i];
      if (delta == 0.0) continue;
      alpha[i] = updated;
      for (const auto& [j, v] : x[i].entries) model.weights[j] += delta * y * v;
      model.bias += delta * y;
    }
    // Dual: sum(alpha) - 1/2 |(w, b)|^2.
    double reg = model.bias * model.bias;
    for (double w : model.weights) reg += w * w;
    double hinge = 0.0;
    for (std::size_t i = 0; i < n; ++i) hinge += std::max(0.0, 1.0 - labels[i] * model.decision(x[i]));
    const double primal = 0.5 * reg + c * hinge;
    const double dual = std::accumulate(alpha.begin(), alpha.end(), 0.0) - 0.5 * reg;
    if (primal - dual <= options.tolerance * std::max(1.0, primal)) break;
  }
  return model;
}

double svm_primal_objective(const LinearModel& model, std::span<const SparseVector> x, std::span<const int> labels,
                            double c) {
  double reg = model.bias * model.bias;
  for (double w : model.weights) reg += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    hinge += std::max(0.0, 1.0 - labels[i] * model.decision(x[i]));
  }
  return 0.5 * reg + c * hinge;
}

OvrSvmEnsemble train_ovr_svm(std::span<const SparseVector> x, std::span<const LabelSet> y, double c,
                             std::size_t dimension, std::size_t num_classes, const SvmOptions& options) {
  if (x.size() != y.size()) throw Error("feature and label-set counts differ");
  if (x.size() < 2) throw Error("one-vs-rest training needs at least 2 points");
  if (!(c >= 0.1 && c <= 10.0)) throw Error("C must be in [0.1, 10], got " + std::to_string(c));
  for (const auto& labels : y) {
    for (ClassId id : labels) {
      if (id < 0 || static_cast<std::size_t>(id) >= num_classes) {
        throw Error("class id " + std::to_string(id) + " out of range");
      }
    }
  }

  OvrSvmEnsemble ensemble;
  ensemble.c = c;
  ensemble.dimension = dimension;
  ensemble.classes.reserve(num_classes);
  std::vector<int> binary(x.size());
  for (std::size_t k = 0; k < num_classes; ++k) {
    const auto id = static_cast<ClassId>(k);
    std::size_t positives = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      binary[i] = y[i].contains(id) ? 1 : -1;
      positives += binary[i] > 0;
    }
    if (positives == 0 || positives == y.size()) {
      spdlog::warn("class {} has only {} examples", k,
                   positives == 0 ? "negative" : "positive");
    }
    ensemble.classes.push_back(train_linear_svm(x, binary, dimension, c, options));
  }
  return ensemble;
}

SvmPrediction svm_predict(const OvrSvmEnsemble& model, const SparseVector& x) {
  SvmPrediction out;
  out.scores.reserve(model.classes.size());
  for (std::size_t k = 0; k < model.classes.size(); ++k) {
    const double s = model.classes[k].decision(x);
    out.scores.push_back(s);
    if (s > 0.0) out.labels.insert(static_cast<ClassId>(k));
  }
  return out;
}

}  // namespace sustext
