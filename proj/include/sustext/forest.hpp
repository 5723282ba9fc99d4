// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sustext/config_space.hpp"

namespace sustext {

struct Trial;

struct ForestOptions {
  std::size_t n_trees = 50;
  std::size_t max_leaf_size = 3;  // nodes with this many points or fewer become leaves
  double variance_floor = 1e-8;
  std::uint64_t seed = 0;
};

struct SurrogatePrediction {
  double mean = 0.0;
  double std = 0.0;
};

// Random regression forest used as the optimizer's surrogate. Each tree is
// grown on a bootstrap resample; every split considers ceil(sqrt(d))
// randomly chosen dimensions. Categorical dimensions split on equality
// with one code, numeric ones on a midpoint threshold.
class ForestSurrogate {
 public:
  static ForestSurrogate fit(const std::vector<std::vector<double>>& x, std::span<const double> y,
                             std::vector<bool> categorical, const ForestOptions& options = {});

  // Mean over trees; std = sqrt(max(variance over trees, floor)).
  SurrogatePrediction predict(std::span<const double> x) const;
  std::size_t tree_count() const { return trees_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1 for leaves
    bool equality = false;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };
  using Tree = std::vector<Node>;

  static double predict_tree(const Tree& tree, std::span<const double> x);

  std::vector<Tree> trees_;
  double variance_floor_ = 1e-8;
};

// Fits on encoded configurations. Non-finite objectives (failed trials)
// are imputed with the worst finite objective. Needs at least 2 trials.
ForestSurrogate fit_surrogate(const ConfigSpace& space, std::span<const Trial> history,
                              const ForestOptions& options = {});

SurrogatePrediction surrogate_predict(const ForestSurrogate& surrogate, const ConfigSpace& space,
                                      const Config& config);

}  // namespace sustext
