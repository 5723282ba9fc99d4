// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "sustext/acquisition.hpp"
#include "sustext/error.hpp"

namespace sustext {

namespace {

constexpr double kResampleCategorical = 0.2;

Config perturb(const ConfigSpace& space, const std::vector<double>& center, double sigma, Rng& rng) {
  std::vector<double> v = center;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = space.params()[i];
    if (p.is_categorical()) {
      if (rng.uniform01() < kResampleCategorical) v[i] = static_cast<double>(rng.below(p.choices.size()));
    } else {
      v[i] = std::clamp(v[i] + sigma * rng.normal(), 0.0, 1.0);
    }
  }
  return decode_config(space, v);
}

}  // namespace

Config suggest(const ConfigSpace& space, std::span<const Trial> history, Rng& rng, const OptimizerOptions& options) {
  if (history.size() < options.n_initial) return sample_config(space, rng);

  const Trial* incumbent = nullptr;
  std::size_t finite = 0;
  for (const auto& t : history) {
    if (!std::isfinite(t.objective)) continue;
    ++finite;
    if (!incumbent || t.objective > incumbent->objective) incumbent = &t;
  }
  if (finite < 2) return sample_config(space, rng);

  ForestOptions forest_options;
  forest_options.n_trees = options.n_trees;
  forest_options.seed = rng.next();
  const ForestSurrogate surrogate = fit_surrogate(space, history, forest_options);

  std::vector<Config> candidates;
  candidates.reserve(options.n_random_candidates + options.n_local_candidates);
  for (std::size_t i = 0; i < options.n_random_candidates; ++i) candidates.push_back(sample_config(space, rng));
  const auto center = encode_config(space, incumbent->config);
  for (std::size_t i = 0; i < options.n_local_candidates; ++i) {
    candidates.push_back(perturb(space, center, options.local_sigma, rng));
  }
  if (candidates.empty()) return sample_config(space, rng);

  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto pred = surrogate_predict(surrogate, space, candidates[i]);
    const double value = log_expected_improvement(pred.mean, pred.std, incumbent->objective);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return candidates[best];
}

OptimizationResult optimize(const Objective& objective, const ConfigSpace& space, std::size_t n_trials,
                            std::uint64_t seed, const OptimizerOptions& options, const TrialCallback& on_trial) {
  if (n_trials < 1) throw Error("optimize needs at least one trial");
  Rng rng(seed);
  const auto default_config = options.evaluate_default_first ? space.default_config() : std::nullopt;

  OptimizationResult result;
  result.history.reserve(n_trials);
  for (std::size_t i = 0; i < n_trials; ++i) {
    Trial trial;
    trial.index = i;
    trial.seed = seed;
    trial.config = (i == 0 && default_config) ? *default_config : suggest(space, result.history, rng, options);
    try {
      trial.objective = objective(trial.config);
      if (std::isnan(trial.objective)) trial.objective = -std::numeric_limits<double>::infinity();
    } catch (const std::exception&) {
      trial.objective = -std::numeric_limits<double>::infinity();
    }
    if (on_trial) on_trial(trial);
    result.history.push_back(std::move(trial));
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.history.size(); ++i) {
    if (result.history[i].objective > result.history[best].objective) best = i;
  }
  result.best = result.history[best];
  return result;
}

void append_trial_log(std::ostream& out, const Trial& trial) {
  nlohmann::json j = {{"index", trial.index}, {"seed", trial.seed}, {"config", to_json(trial.config)}};
  j["objective"] = std::isfinite(trial.objective) ? nlohmann::json(trial.objective) : nlohmann::json(nullptr);
  out << j.dump() << '\n';
}

}  // namespace sustext
