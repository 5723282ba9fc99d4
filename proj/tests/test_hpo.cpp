// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "sustext/acquisition.hpp"
#include "sustext/config_space.hpp"
#include "sustext/error.hpp"
#include "sustext/forest.hpp"
#include "sustext/optimizer.hpp"
#include "sustext/resources.hpp"

using namespace sustext;
using nlohmann::json;

namespace {

ConfigSpace bert_space() { return ConfigSpace::from_json(json::parse(resources::bert_space_json())); }

ConfigSpace unit_space() {
  return ConfigSpace({ParamSpec{.name = "x", .kind = ParamKind::linear_float, .lower = 0.0, .upper = 1.0}});
}

double quadratic(const Config& c) {
  const double x = as_double(c.at("x"));
  return -(x - 0.7) * (x - 0.7);
}

std::vector<Trial> history_y_equals_x(std::size_t n) {
  std::vector<Trial> h;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    h.push_back(Trial{i, 0, Config{{"x", x}}, x});
  }
  return h;
}

}  // namespace

TEST(ConfigSpace, BundledSpacesLoad) {
  const auto b = bert_space();
  EXPECT_EQ(b.dimension(), 7u);
  EXPECT_EQ(b.param("lr_scheduler_type").choices.size(), 8u);
  EXPECT_FALSE(b.default_config().has_value());
  const auto s = ConfigSpace::from_json(json::parse(resources::svm_space_json()));
  const auto d = s.default_config().value();
  EXPECT_EQ(as_int(d.at("max_ngram")), 1);
  EXPECT_EQ(as_double(d.at("C")), 1.0);
}

TEST(ConfigSpace, ReportedBestRobertaConfigurationIsInsideTheSpace) {
  const auto space = bert_space();
  const Config best = {{"learning_rate", 6.9e-05},   {"weight_decay", 0.02627},
                       {"lr_scheduler_type", "cosine"}, {"warmup_ratio", 0.04439},
                       {"label_smoothing", 0.00136}, {"threshold", 0.33},
                       {"epochs", std::int64_t{34}}};
  EXPECT_NO_THROW(space.validate(best));
  const auto back = decode_config(space, encode_config(space, best));
  EXPECT_EQ(std::get<std::string>(back.at("lr_scheduler_type")), "cosine");
  EXPECT_EQ(as_int(back.at("epochs")), 34);
  EXPECT_NEAR(as_double(back.at("threshold")), 0.33, 1e-12);
}

TEST(ConfigSpace, SamplingRespectsKinds) {
  const auto space = bert_space();
  Rng rng(5);
  std::set<long long> thresholds;
  for (int i = 0; i < 2000; ++i) {
    const auto c = sample_config(space, rng);
    ASSERT_NO_THROW(space.validate(c));
    const double t = as_double(c.at("threshold"));
    const double steps = (t - 0.3) / 0.01;
    ASSERT_NEAR(steps, std::round(steps), 1e-9);
    ASSERT_GE(t, 0.3 - 1e-12);
    ASSERT_LE(t, 0.6 + 1e-12);
    thresholds.insert(std::llround(t * 100));
    const auto e = as_int(c.at("epochs"));
    ASSERT_GE(e, 15);
    ASSERT_LE(e, 35);
    const double lr = as_double(c.at("learning_rate"));
    ASSERT_GE(lr, 1e-6);
    ASSERT_LE(lr, 0.01);
  }
  EXPECT_EQ(thresholds.size(), 31u);
  EXPECT_EQ(*thresholds.begin(), 30);
  EXPECT_EQ(*thresholds.rbegin(), 60);
}

TEST(ConfigSpace, SamplingIsDeterministic) {
  const auto space = bert_space();
  Rng a(17), b(17);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(to_json(sample_config(space, a)), to_json(sample_config(space, b)));
}

TEST(ConfigSpace, LogSamplingIsUniformInLogSpace) {
  ParamSpec p{.name = "lr", .kind = ParamKind::log_float, .lower = 1e-6, .upper = 1e-2};
  Rng rng(3);
  int below_midpoint = 0;
  for (int i = 0; i < 4000; ++i) below_midpoint += as_double(p.sample(rng)) < 1e-4;
  EXPECT_NEAR(below_midpoint / 4000.0, 0.5, 0.04);
}

TEST(ConfigSpace, Encoding) {
  ParamSpec lin{.name = "a", .kind = ParamKind::linear_float, .lower = 0.0, .upper = 10.0};
  EXPECT_DOUBLE_EQ(lin.encode(5.0), 0.5);
  ParamSpec lg{.name = "b", .kind = ParamKind::log_float, .lower = 1e-6, .upper = 1e-2};
  EXPECT_NEAR(lg.encode(1e-4), 0.5, 1e-12);
  ParamSpec cat{.name = "c", .kind = ParamKind::categorical, .choices = {"a", "b", "c"}};
  EXPECT_EQ(cat.encode(std::string("b")), 1.0);
  EXPECT_THROW(lin.encode(11.0), Error);
  EXPECT_THROW(cat.encode(std::string("z")), Error);
}

TEST(ConfigSpace, InvalidSpecsAreRejected) {
  EXPECT_THROW(ConfigSpace({ParamSpec{.name = "a", .lower = 1.0, .upper = 1.0}}), Error);
  EXPECT_THROW(ConfigSpace({ParamSpec{.name = "a", .kind = ParamKind::log_float, .lower = 0.0, .upper = 1.0}}),
               Error);
  EXPECT_THROW(ConfigSpace({ParamSpec{.name = "a", .kind = ParamKind::categorical, .choices = {"x", "x"}}}), Error);
  EXPECT_THROW(ConfigSpace({ParamSpec{.name = "a"}, ParamSpec{.name = "a"}}), Error);
  EXPECT_THROW(ConfigSpace::from_json(json::parse(R"([{"name":"a","kind":"cubic","lower":0,"upper":1}])")), Error);
}

TEST(ConfigSpace, ValidateNamesTheParameter) {
  const auto space = ConfigSpace::from_json(json::parse(resources::svm_space_json()));
  try {
    space.validate(Config{{"max_ngram", std::int64_t{7}}, {"C", 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("max_ngram"), std::string::npos);
  }
  EXPECT_THROW(space.validate(Config{{"C", 1.0}}), Error);
}

TEST(Forest, ConstantHistoryGivesConstantMeanAndFlooredStd) {
  const auto space = unit_space();
  std::vector<Trial> h;
  for (std::size_t i = 0; i < 12; ++i) h.push_back(Trial{i, 0, Config{{"x", i / 12.0}}, 0.25});
  const auto f = fit_surrogate(space, h);
  EXPECT_EQ(f.tree_count(), 50u);
  for (double x : {0.0, 0.3, 0.99}) {
    const auto p = surrogate_predict(f, space, Config{{"x", x}});
    EXPECT_DOUBLE_EQ(p.mean, 0.25);
    EXPECT_DOUBLE_EQ(p.std, 1e-4);
  }
}

TEST(Forest, MonotoneMeanOnIncreasingHistory) {
  const auto space = unit_space();
  const auto h = history_y_equals_x(20);
  const auto f = fit_surrogate(space, h, {.seed = 1});
  double prev = -1e9;
  for (int i = 0; i <= 100; ++i) {
    const auto p = surrogate_predict(f, space, Config{{"x", i / 100.0}});
    ASSERT_GE(p.mean, prev - 1e-12) << "at x=" << i / 100.0;
    ASSERT_GE(p.std, 1e-4);
    prev = p.mean;
  }
  for (const auto& t : h) {
    const auto p = surrogate_predict(f, space, t.config);
    EXPECT_NEAR(p.mean, t.objective, 0.1);
  }
}

TEST(Forest, DeterministicGivenSeedAndNeedsTwoTrials) {
  const auto space = unit_space();
  const auto h = history_y_equals_x(15);
  const auto a = fit_surrogate(space, h, {.seed = 9});
  const auto b = fit_surrogate(space, h, {.seed = 9});
  for (double x : {0.1, 0.5, 0.77}) {
    const auto pa = surrogate_predict(a, space, Config{{"x", x}});
    const auto pb = surrogate_predict(b, space, Config{{"x", x}});
    EXPECT_EQ(pa.mean, pb.mean);
    EXPECT_EQ(pa.std, pb.std);
  }
  EXPECT_THROW(fit_surrogate(space, std::span<const Trial>(h.data(), 1)), Error);
}

TEST(Forest, CategoricalEqualitySplits) {
  const ConfigSpace space({ParamSpec{.name = "k", .kind = ParamKind::categorical, .choices = {"a", "b", "c"}}});
  std::vector<Trial> h;
  for (std::size_t i = 0; i < 30; ++i) {
    const std::string k = std::string(1, static_cast<char>('a' + i % 3));
    h.push_back(Trial{i, 0, Config{{"k", k}}, k == "b" ? 1.0 : 0.0});
  }
  const auto f = fit_surrogate(space, h);
  EXPECT_NEAR(surrogate_predict(f, space, Config{{"k", std::string("b")}}).mean, 1.0, 1e-12);
  EXPECT_NEAR(surrogate_predict(f, space, Config{{"k", std::string("c")}}).mean, 0.0, 1e-12);
}

TEST(Forest, FailedTrialsAreImputedWithWorstFinite) {
  const auto space = unit_space();
  auto h = history_y_equals_x(10);
  h[9].objective = -std::numeric_limits<double>::infinity();
  const auto f = fit_surrogate(space, h);
  const auto p = surrogate_predict(f, space, h[9].config);
  EXPECT_TRUE(std::isfinite(p.mean));
  EXPECT_TRUE(std::isfinite(p.std));
}

TEST(LogEi, ClosedFormValues) {
  EXPECT_NEAR(log_expected_improvement(0.0, 1.0, 0.0), -0.91893853320467274178, 1e-12);
  EXPECT_NEAR(std::exp(log_expected_improvement(0.0, 1.0, 0.0)), 0.3989422804014327, 1e-12);
  // Reference values from 50-digit arithmetic.
  const std::vector<std::pair<double, double>> ref = {
      {-1, -2.4851210257126413368}, {-3, -7.8696860596030285171}, {-5, -16.744301162660990143},
      {-10, -55.553122036122355927}, {-20, -206.91783850942509785}, {-40, -808.29856835661996024},
      {2, 0.69738354578822831219}};
  for (const auto& [z, want] : ref) EXPECT_NEAR(log_expected_improvement(z, 1.0, 0.0), want, 1e-9 * std::abs(want)) << z;
}

TEST(LogEi, LargeMeanApproachesLogGap) {
  EXPECT_NEAR(log_expected_improvement(8.0, 1.0, 0.0), std::log(8.0), 1e-3);
  EXPECT_NEAR(log_expected_improvement(2.5 + 8.0 * 0.5, 0.5, 2.5), std::log(4.0), 1e-3);
}

TEST(LogEi, MonotoneInMeanAndInStdBelowIncumbent) {
  double prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double mean = -30.0 + 0.4 * i;
    const double v = log_expected_improvement(mean, 1.0, 0.0);
    ASSERT_GT(v, prev) << mean;
    prev = v;
  }
  prev = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const double std = 0.05 + 0.05 * i;
    const double v = log_expected_improvement(-1.0, std, 0.0);
    ASSERT_GT(v, prev) << std;
    prev = v;
  }
}

TEST(LogEi, FloorAndErrors) {
  EXPECT_EQ(log_expected_improvement(-1e300, 1.0, 0.0), kLogEiFloor);
  EXPECT_THROW(log_expected_improvement(0.0, 0.0, 0.0), Error);
  EXPECT_THROW(log_expected_improvement(0.0, -1.0, 0.0), Error);
}

TEST(Suggest, RandomPhaseAndValidity) {
  const auto space = bert_space();
  Rng rng(1);
  std::vector<Trial> history;
  for (std::size_t i = 0; i < 25; ++i) {
    const auto c = suggest(space, history, rng);
    ASSERT_NO_THROW(space.validate(c));
    const auto round = decode_config(space, encode_config(space, c));
    ASSERT_EQ(to_json(round), to_json(c));
    history.push_back(Trial{i, 1, c, as_double(c.at("threshold"))});
  }
}

TEST(Suggest, InitialDesignIsPureSampling) {
  const auto space = unit_space();
  auto h = history_y_equals_x(9);
  Rng a(4), b(4);
  EXPECT_EQ(to_json(suggest(space, h, a)), to_json(sample_config(space, b)));
}

TEST(Suggest, ConcentratesNearOptimumAfterThirtyTrials) {
  const auto space = unit_space();
  int near = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = optimize(quadratic, space, 30, seed);
    Rng rng(seed * 1000 + 1);
    const double x = as_double(suggest(space, r.history, rng).at("x"));
    near += (x >= 0.5 && x <= 0.9);
  }
  EXPECT_GE(near, 4);
}

TEST(Optimize, BasicContracts) {
  const auto space = unit_space();
  const auto one = optimize(quadratic, space, 1, 3);
  EXPECT_EQ(one.history.size(), 1u);
  EXPECT_EQ(one.best.index, 0u);

  const auto flat = optimize([](const Config&) { return 0.5; }, space, 15, 3);
  EXPECT_EQ(flat.best.objective, 0.5);
  EXPECT_EQ(flat.best.index, 0u);  // earliest maximum

  const auto a = optimize(quadratic, space, 20, 11);
  const auto b = optimize(quadratic, space, 20, 11);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    EXPECT_EQ(to_json(a.history[i].config), to_json(b.history[i].config));
    EXPECT_EQ(a.history[i].objective, b.history[i].objective);
  }
  EXPECT_THROW(optimize(quadratic, space, 0, 1), Error);
}

TEST(Optimize, FailingObjectivesAreRecordedAndSkipped) {
  const auto space = unit_space();
  int calls = 0;
  const auto r = optimize(
      [&](const Config& c) {
        ++calls;
        if (calls % 3 == 0) throw std::runtime_error("boom");
        if (calls % 5 == 0) return std::nan("");
        return quadratic(c);
      },
      space, 25, 2);
  EXPECT_EQ(r.history.size(), 25u);
  std::size_t failed = 0;
  for (const auto& t : r.history) failed += !std::isfinite(t.objective);
  EXPECT_GE(failed, 8u);
  EXPECT_TRUE(std::isfinite(r.best.objective));

  std::ostringstream log;
  for (const auto& t : r.history) append_trial_log(log, t);
  std::istringstream in(log.str());
  std::string line;
  std::size_t nulls = 0, lines = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    ASSERT_TRUE(j.contains("index") && j.contains("seed") && j.contains("config") && j.contains("objective"));
    nulls += j["objective"].is_null();
    ++lines;
  }
  EXPECT_EQ(lines, 25u);
  EXPECT_EQ(nulls, failed);
}

TEST(Optimize, DefaultConfigurationIsEvaluatedFirst) {
  const ConfigSpace space({ParamSpec{.name = "x",
                                     .kind = ParamKind::linear_float,
                                     .lower = 0.0,
                                     .upper = 1.0,
                                     .default_value = ParamValue{0.25}}});
  const auto r = optimize(quadratic, space, 3, 1);
  EXPECT_EQ(as_double(r.history[0].config.at("x")), 0.25);
  OptimizerOptions off;
  off.evaluate_default_first = false;
  const auto r2 = optimize(quadratic, space, 3, 1, off);
  EXPECT_NE(as_double(r2.history[0].config.at("x")), 0.25);
}
