// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sustext/error.hpp"
#include "sustext/optimizer.hpp"
#include "sustext/rng.hpp"

namespace sustext {

namespace {

struct Split {
  int feature = -1;
  bool equality = false;
  double threshold = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<std::vector<double>>& x, std::span<const double> y, const std::vector<bool>& categorical,
              std::size_t max_leaf_size, Rng& rng)
      : x_(x), y_(y), categorical_(categorical), max_leaf_size_(max_leaf_size), rng_(rng) {
    const auto d = static_cast<double>(categorical_.size());
    features_per_split_ = static_cast<std::size_t>(std::ceil(std::sqrt(d)));
  }

  template <typename Node>
  int build(std::vector<std::size_t> idx, std::vector<Node>& nodes) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    double sum = 0.0;
    double sum_sq = 0.0;
    for (auto i : idx) {
      sum += y_[i];
      sum_sq += y_[i] * y_[i];
    }
    const auto n = static_cast<double>(idx.size());
    nodes[static_cast<std::size_t>(id)].value = sum / n;
    const bool pure = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return y_[i] == y_[idx.front()]; });
    if (idx.size() <= max_leaf_size_ || pure) return id;

    const Split split = best_split(idx, std::max(0.0, sum_sq - sum * sum / n));
    if (split.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    const auto f = static_cast<std::size_t>(split.feature);
    for (auto i : idx) {
      const bool goes_left = split.equality ? x_[i][f] == split.threshold : x_[i][f] <= split.threshold;
      (goes_left ? left : right).push_back(i);
    }
    idx.clear();
    idx.shrink_to_fit();
    const int l = build(std::move(left), nodes);
    const int r = build(std::move(right), nodes);
    auto& node = nodes[static_cast<std::size_t>(id)];
    node.feature = split.feature;
    node.equality = split.equality;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

 private:
  // Examines ceil(sqrt(d)) random dimensions, and more only while none of
  // the examined ones admits a split.
  Split best_split(const std::vector<std::size_t>& idx, double parent_sse) {
    std::vector<std::size_t> order(categorical_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng_.shuffle(std::span<std::size_t>(order));
    Split best;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k >= features_per_split_ && best.feature >= 0) break;
      const std::size_t f = order[k];
      if (categorical_[f]) {
        equality_split(idx, f, best);
      } else {
        threshold_split(idx, f, best);
      }
    }
    if (best.feature >= 0 && !(best.sse < parent_sse - 1e-15 * std::max(1.0, parent_sse))) best.feature = -1;
    return best;
  }

  void threshold_split(const std::vector<std::size_t>& idx, std::size_t f, Split& best) const {
    std::vector<std::size_t> sorted = idx;
    std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) { return x_[a][f] < x_[b][f]; });
    double total = 0.0;
    double total_sq = 0.0;
    for (auto i : sorted) {
      total += y_[i];
      total_sq += y_[i] * y_[i];
    }
    double left = 0.0;
    double left_sq = 0.0;
    const auto n = sorted.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      left += y_[sorted[k]];
      left_sq += y_[sorted[k]] * y_[sorted[k]];
      const double a = x_[sorted[k]][f];
      const double b = x_[sorted[k + 1]][f];
      if (!(a < b)) continue;
      const auto nl = static_cast<double>(k + 1);
      const auto nr = static_cast<double>(n - k - 1);
      const double right = total - left;
      const double right_sq = total_sq - left_sq;
      const double sse = std::max(0.0, left_sq - left * left / nl) + std::max(0.0, right_sq - right * right / nr);
      if (sse < best.sse) best = {static_cast<int>(f), false, 0.5 * (a + b), sse};
    }
  }

  void equality_split(const std::vector<std::size_t>& idx, std::size_t f, Split& best) const {
    std::vector<double> codes;
    for (auto i : idx) codes.push_back(x_[i][f]);
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    if (codes.size() < 2) return;
    for (double code : codes) {
      double in = 0.0, in_sq = 0.0, out = 0.0, out_sq = 0.0;
      double n_in = 0.0, n_out = 0.0;
      for (auto i : idx) {
        if (x_[i][f] == code) {
          in += y_[i];
          in_sq += y_[i] * y_[i];
          n_in += 1.0;
        } else {
          out += y_[i];
          out_sq += y_[i] * y_[i];
          n_out += 1.0;
        }
      }
      const double sse = std::max(0.0, in_sq - in * in / n_in) + std::max(0.0, out_sq - out * out / n_out);
      if (sse < best.sse) best = {static_cast<int>(f), true, code, sse};
    }
  }

  const std::vector<std::vector<double>>& x_;
  std::span<const double> y_;
  const std::vector<bool>& categorical_;
  std::size_t max_leaf_size_;
  std::size_t features_per_split_ = 1;
  Rng& rng_;
};

}  // namespace

ForestSurrogate ForestSurrogate::fit(const std::vector<std::vector<double>>& x, std::span<const double> y,
                                     std::vector<bool> categorical, const ForestOptions& options) {
  if (x.size() != y.size()) throw Error("surrogate inputs and targets differ in length");
  if (x.size() < 2) throw Error("surrogate needs at least 2 observations");
  if (options.n_trees == 0) throw Error("surrogate needs at least one tree");
  for (const auto& row : x) {
    if (row.size() != categorical.size()) throw Error("surrogate input has the wrong dimension");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw Error("surrogate targets must be finite");
  }

  ForestSurrogate forest;
  forest.variance_floor_ = options.variance_floor;
  Rng rng(options.seed);
  TreeBuilder builder(x, y, categorical, std::max<std::size_t>(options.max_leaf_size, 1), rng);
  forest.trees_.reserve(options.n_trees);
  for (std::size_t t = 0; t < options.n_trees; ++t) {
    std::vector<std::size_t> sample(x.size());
    for (auto& s : sample) s = static_cast<std::size_t>(rng.below(x.size()));
    Tree tree;
    builder.build(std::move(sample), tree);
    forest.trees_.push_back(std::move(tree));
  }
  return forest;
}

double ForestSurrogate::predict_tree(const Tree& tree, std::span<const double> x) {
  std::size_t node = 0;
  while (tree[node].feature >= 0) {
    const auto& n = tree[node];
    const double v = x[static_cast<std::size_t>(n.feature)];
    const bool left = n.equality ? v == n.threshold : v <= n.threshold;
    node = static_cast<std::size_t>(left ? n.left : n.right);
  }
  return tree[node].value;
}

SurrogatePrediction ForestSurrogate::predict(std::span<const double> x) const {
  std::vector<double> values;
  values.reserve(trees_.size());
  double sum = 0.0;
  for (const auto& t : trees_) {
    values.push_back(predict_tree(t, x));
    sum += values.back();
  }
  const auto n = static_cast<double>(trees_.size());
  const double mean = sum / n;
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  variance /= n;
  return {mean, std::sqrt(std::max(variance, variance_floor_))};
}

ForestSurrogate fit_surrogate(const ConfigSpace& space, std::span<const Trial> history, const ForestOptions& options) {
  if (history.size() < 2) throw Error("fit_surrogate needs at least 2 trials, got " + std::to_string(history.size()));
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& t : history) {
    if (std::isfinite(t.objective)) worst = std::min(worst, t.objective);
  }
  if (!std::isfinite(worst)) worst = 0.0;

  std::vector<std::vector<double>> x;
  std::vector<double> y;
  x.reserve(history.size());
  y.reserve(history.size());
  for (const auto& t : history) {
    x.push_back(encode_config(space, t.config));
    y.push_back(std::isfinite(t.objective) ? t.objective : worst);
  }
  std::vector<bool> categorical;
  for (const auto& p : space.params()) categorical.push_back(p.is_categorical());
  return ForestSurrogate::fit(x, y, std::move(categorical), options);
}

SurrogatePrediction surrogate_predict(const ForestSurrogate& surrogate, const ConfigSpace& space, const Config& config) {
  return surrogate.predict(encode_config(space, config));
}

}  // namespace sustext
