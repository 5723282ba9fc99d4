// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "sustext/config_space.hpp"
#include "sustext/forest.hpp"
#include "sustext/rng.hpp"

namespace sustext {

// Objectives are maximized. Failed evaluations are stored as -infinity.
struct Trial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Config config;
  double objective = 0.0;
};

struct OptimizerOptions {
  std::size_t n_initial = 10;
  std::size_t n_random_candidates = 1000;
  std::size_t n_local_candidates = 100;
  double local_sigma = 0.1;  // in encoded space
  std::size_t n_trees = 50;
  // Evaluate the space's default configuration as the first trial when
  // every parameter declares one.
  bool evaluate_default_first = true;
};

// Random configuration while fewer than n_initial trials exist; otherwise
// the candidate maximizing log expected improvement under a forest
// surrogate. Ties go to the lowest candidate index (random candidates
// come first).
Config suggest(const ConfigSpace& space, std::span<const Trial> history, Rng& rng,
               const OptimizerOptions& options = {});

using Objective = std::function<double(const Config&)>;
using TrialCallback = std::function<void(const Trial&)>;

struct OptimizationResult {
  Trial best;
  std::vector<Trial> history;
};

// Sequential suggest / evaluate loop. Objectives that throw are recorded
// as -infinity and the loop continues. The best trial is the earliest one
// with the highest objective.
OptimizationResult optimize(const Objective& objective, const ConfigSpace& space, std::size_t n_trials,
                            std::uint64_t seed, const OptimizerOptions& options = {},
                            const TrialCallback& on_trial = {});

// One JSON object per line: {"index","seed","config","objective"}.
void append_trial_log(std::ostream& out, const Trial& trial);

}  // namespace sustext
