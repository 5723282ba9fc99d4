// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/tuning.hpp"

#include <array>
#include <cstdio>
#include <optional>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "sustext/error.hpp"
#include "sustext/resources.hpp"

namespace sustext {

namespace {

struct Features {
  TfidfModel tfidf;
  std::vector<SparseVector> train;
  std::vector<SparseVector> val;
  std::vector<SparseVector> test;
};

std::vector<SparseVector> transform_all(const TfidfModel& model, const std::vector<std::string>& texts) {
  std::vector<SparseVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(model.transform(t));
  return out;
}

PredictionSet predict_all(const OvrSvmEnsemble& svm, const std::vector<SparseVector>& x,
                          const std::vector<std::string>& ids) {
  PredictionSet out;
  for (std::size_t i = 0; i < x.size(); ++i) out.labels[ids[i]] = svm_predict(svm, x[i]).labels;
  return out;
}

SvmConfig to_svm_config(const Config& c) {
  return {static_cast<int>(as_int(c.at("max_ngram"))), as_double(c.at("C"))};
}

// Restores the global log level when tuning finishes; one-class warnings
// from hundreds of retrainings are not useful.
class ScopedLogLevel {
 public:
  explicit ScopedLogLevel(spdlog::level::level_enum level) : previous_(spdlog::get_level()) {
    if (previous_ < level) spdlog::set_level(level);
  }
  ~ScopedLogLevel() { spdlog::set_level(previous_); }
  ScopedLogLevel(const ScopedLogLevel&) = delete;
  ScopedLogLevel& operator=(const ScopedLogLevel&) = delete;

 private:
  spdlog::level::level_enum previous_;
};

std::string format_mean_std(const MeanStd& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f ± %.3f", v.mean, v.stddev);
  return buf;
}

}  // namespace

LabelMap LabeledSet::gold() const {
  LabelMap m;
  for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = labels[i];
  return m;
}

LabeledSet select_labeled(std::span<const Passage> passages, std::span<const std::string> ids) {
  std::unordered_map<std::string, const Passage*> by_id;
  for (const auto& p : passages) by_id.emplace(p.id, &p);
  LabeledSet out;
  for (const auto& id : ids) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw Error("split references unknown passage '" + id + "'");
    if (!it->second->gold_labels) throw Error("passage '" + id + "' has no gold labels");
    out.ids.push_back(id);
    out.texts.push_back(it->second->text);
    out.labels.push_back(*it->second->gold_labels);
  }
  return out;
}

const ConfigSpace& svm_config_space() {
  static const ConfigSpace space = ConfigSpace::from_json(nlohmann::json::parse(resources::svm_space_json()));
  return space;
}

TuningSummary tune_svm_baseline(const LabeledSet& train, const LabeledSet& val, const LabeledSet& test,
                                std::size_t n_trials, std::span<const std::uint64_t> seeds, const TuneOptions& options) {
  if (val.size() == 0) throw Error("validation split is empty");
  if (train.size() < 2) throw Error("training split needs at least 2 passages");
  if (seeds.empty()) throw Error("at least one seed is required");

  const ScopedLogLevel quiet(spdlog::level::err);
  const ConfigSpace& space = svm_config_space();
  const LabelMap val_gold = val.gold();
  const std::optional<LabelMap> test_gold = test.size() ? std::optional<LabelMap>(test.gold()) : std::nullopt;

  std::array<std::optional<Features>, 5> cache;
  const auto features = [&](int max_ngram) -> const Features& {
    auto& slot = cache.at(static_cast<std::size_t>(max_ngram));
    if (!slot) {
      Features f;
      f.tfidf = fit_tfidf(train.texts, max_ngram);
      f.train = transform_all(f.tfidf, train.texts);
      f.val = transform_all(f.tfidf, val.texts);
      f.test = transform_all(f.tfidf, test.texts);
      slot = std::move(f);
    }
    return *slot;
  };
  const auto fit = [&](const SvmConfig& cfg, std::uint64_t seed) {
    const Features& f = features(cfg.max_ngram);
    SvmOptions svm_options;
    svm_options.seed = seed;
    return train_ovr_svm(f.train, train.labels, cfg.c, f.tfidf.vocabulary_size(), options.num_classes, svm_options);
  };
  const auto validation_f1 = [&](const SvmConfig& cfg, std::uint64_t seed) {
    const auto svm = fit(cfg, seed);
    return evaluate(predict_all(svm, features(cfg.max_ngram).val, val.ids), val_gold, options.num_classes).weighted.f1;
  };
  const auto test_report = [&](const OvrSvmEnsemble& svm, int max_ngram) {
    if (!test_gold) return MetricsReport{};
    return evaluate(predict_all(svm, features(max_ngram).test, test.ids), *test_gold, options.num_classes);
  };

  TuningSummary summary;
  const SvmConfig default_cfg = to_svm_config(*space.default_config());
  for (const std::uint64_t seed : seeds) {
    SeedResult r;
    r.seed = seed;
    auto result = optimize([&](const Config& c) { return validation_f1(to_svm_config(c), seed); }, space, n_trials,
                           seed, options.optimizer, options.on_trial);
    r.best = to_svm_config(result.best.config);
    r.validation_weighted_f1 = result.best.objective;
    r.history = std::move(result.history);

    const auto best_svm = fit(r.best, seed);
    r.test_report = test_report(best_svm, r.best.max_ngram);
    r.model = SvmPipeline{features(r.best.max_ngram).tfidf, best_svm};

    const auto default_svm = fit(default_cfg, seed);
    r.default_validation_weighted_f1 =
        evaluate(predict_all(default_svm, features(default_cfg.max_ngram).val, val.ids), val_gold, options.num_classes)
            .weighted.f1;
    r.default_test_report = test_report(default_svm, default_cfg.max_ngram);
    summary.per_seed.push_back(std::move(r));
  }

  if (test_gold) {
    const auto collect = [&](auto pick) {
      std::vector<double> v;
      for (const auto& r : summary.per_seed) v.push_back(pick(r.test_report));
      return mean_std(v);
    };
    summary.test_weighted_f1 = collect([](const MetricsReport& m) { return m.weighted.f1; });
    summary.test_macro_f1 = collect([](const MetricsReport& m) { return m.macro.f1; });
    summary.test_micro_f1 = collect([](const MetricsReport& m) { return m.micro.f1; });
    summary.test_weighted_precision = collect([](const MetricsReport& m) { return m.weighted.precision; });
    summary.test_weighted_recall = collect([](const MetricsReport& m) { return m.weighted.recall; });
  }
  return summary;
}

std::string TuningSummary::table() const {
  std::string out = "model\tweighted_f1\tmacro_f1\tmicro_f1\tweighted_precision\tweighted_recall\n";
  out += "TF-IDF + SVM\t" + format_mean_std(test_weighted_f1) + "\t" + format_mean_std(test_macro_f1) + "\t" +
         format_mean_std(test_micro_f1) + "\t" + format_mean_std(test_weighted_precision) + "\t" +
         format_mean_std(test_weighted_recall) + "\n";
  return out;
}

}  // namespace sustext
