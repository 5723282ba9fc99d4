// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>

#include "sustext/error.hpp"

namespace sustext {

namespace {

__extension__ typedef __int128 i128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  constexpr i128 kU64 = static_cast<i128>(std::numeric_limits<std::uint64_t>::max());
  if (a <= kU64 && b <= kU64) {
    return static_cast<i128>(std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)));
  }
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Sum of ratios kept as an exact fraction while it fits in 128 bits, with
// a long double shadow for the (large-corpus) case where it does not.
class RatioSum {
 public:
  void add(std::int64_t num, std::int64_t den) {
    if (den == 0 || num == 0) return;
    approx_ += static_cast<long double>(num) / static_cast<long double>(den);
    if (!exact_) return;
    if (add_small(num, den)) return;
    i128 a = 0;
    i128 b = 0;
    i128 d = 0;
    if (__builtin_mul_overflow(num_, static_cast<i128>(den), &a) ||
        __builtin_mul_overflow(static_cast<i128>(num), den_, &b) || __builtin_add_overflow(a, b, &a) ||
        __builtin_mul_overflow(den_, static_cast<i128>(den), &d)) {
      exact_ = false;
      return;
    }
    const i128 g = gcd128(a, d);
    num_ = a / g;
    den_ = d / g;
  }

  // (sum / divisor) rounded to double.
  double divided_by(std::int64_t divisor) const {
    if (divisor == 0) return 0.0;
    if (exact_ && fits64(num_) && fits64(den_)) {
      std::int64_t d = 0;
      if (!__builtin_mul_overflow(static_cast<std::int64_t>(den_), divisor, &d)) {
        const auto n = static_cast<std::int64_t>(num_);
        const std::int64_t g = std::gcd(n, d);
        constexpr std::int64_t kExactLimit = std::int64_t{1} << 53;
        if (n / g < kExactLimit && d / g < kExactLimit) {
          return static_cast<double>(n / g) / static_cast<double>(d / g);
        }
      }
    }
    if (exact_) {
      i128 d = 0;
      if (!__builtin_mul_overflow(den_, static_cast<i128>(divisor), &d)) {
        const i128 g = gcd128(num_, d);
        const i128 n = num_ / g;
        const i128 m = d / g;
        constexpr i128 kExactLimit = i128{1} << 53;
        if (n < kExactLimit && m < kExactLimit) return static_cast<double>(n) / static_cast<double>(m);
        return static_cast<double>(static_cast<long double>(n) / static_cast<long double>(m));
      }
    }
    return static_cast<double>(approx_ / static_cast<long double>(divisor));
  }

 private:
  static bool fits64(i128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
  }

  // 64-bit version of add(); false when an intermediate would overflow.
  bool add_small(std::int64_t num, std::int64_t den) {
    if (!fits64(num_) || !fits64(den_)) return false;
    const auto n0 = static_cast<std::int64_t>(num_);
    const auto d0 = static_cast<std::int64_t>(den_);
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t d = 0;
    if (__builtin_mul_overflow(n0, den, &a) || __builtin_mul_overflow(num, d0, &b) ||
        __builtin_add_overflow(a, b, &a) || __builtin_mul_overflow(d0, den, &d)) {
      return false;
    }
    const std::int64_t g = std::gcd(a, d);
    num_ = a / g;
    den_ = d / g;
    return true;
  }

  i128 num_ = 0;
  i128 den_ = 1;
  bool exact_ = true;
  long double approx_ = 0.0L;
};

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

Prf prf(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn); both are 0 when tp == 0.
  return {ratio(tp, tp + fp), ratio(tp, tp + fn), ratio(2 * tp, 2 * tp + fp + fn)};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_labels(const LabelSet& labels, std::size_t num_classes, const std::string& id) {
  for (ClassId c : labels) {
    if (c < 0 || static_cast<std::size_t>(c) >= num_classes) {
      throw Error("passage '" + id + "' has class id " + std::to_string(c) + " outside the schema");
    }
  }
}

}  // namespace

ClassCounts class_counts(const PredictionSet& pred, const LabelMap& gold, std::size_t num_classes) {
  ClassCounts counts;
  counts.per_class.assign(num_classes, {});
  std::vector<std::string> only_pred;
  std::vector<std::string> only_gold;

  auto p = pred.labels.begin();
  auto g = gold.begin();
  while (p != pred.labels.end() || g != gold.end()) {
    if (p != pred.labels.end() && g != gold.end() && p->first == g->first) {
      check_labels(p->second, num_classes, p->first);
      check_labels(g->second, num_classes, g->first);
      // Both sets are sorted: one merge pass yields tp, fp and fn.
      auto a = p->second.begin();
      auto b = g->second.begin();
      while (a != p->second.end() || b != g->second.end()) {
        if (b == g->second.end() || (a != p->second.end() && *a < *b)) {
          ++counts.per_class[static_cast<std::size_t>(*a++)].fp;
        } else if (a == p->second.end() || *b < *a) {
          ++counts.per_class[static_cast<std::size_t>(*b++)].fn;
        } else {
          ++counts.per_class[static_cast<std::size_t>(*a)].tp;
          ++a;
          ++b;
        }
      }
      ++p;
      ++g;
    } else if (g == gold.end() || (p != pred.labels.end() && p->first < g->first)) {
      only_pred.push_back(p->first);
      ++p;
    } else {
      only_gold.push_back(g->first);
      ++g;
    }
  }

  if (!only_pred.empty() || !only_gold.empty()) {
    std::ostringstream msg;
    msg << "prediction and gold passage ids differ;";
    const auto list = [&](const char* label, const std::vector<std::string>& ids) {
      if (ids.empty()) return;
      msg << ' ' << label << ':';
      for (std::size_t i = 0; i < ids.size() && i < 20; ++i) msg << ' ' << ids[i];
      if (ids.size() > 20) msg << " ... (" << ids.size() << " total)";
    };
    list("only predicted", only_pred);
    list("only gold", only_gold);
    throw Error(msg.str());
  }
  return counts;
}

MetricsReport report_from_counts(const ClassCounts& counts) {
  MetricsReport r;
  const auto k = static_cast<std::int64_t>(counts.per_class.size());
  r.per_class.reserve(counts.per_class.size());
  r.support.reserve(counts.per_class.size());
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t total_support = 0;
  RatioSum macro_p, macro_r, macro_f;
  RatioSum weighted_p, weighted_r, weighted_f;
  for (const auto& c : counts.per_class) {
    r.per_class.push_back(prf(c.tp, c.fp, c.fn));
    r.support.push_back(c.support());
    tp += c.tp;
    fp += c.fp;
    fn += c.fn;
    const std::int64_t s = c.support();
    total_support += s;
    macro_p.add(c.tp, c.tp + c.fp);
    macro_r.add(c.tp, c.tp + c.fn);
    macro_f.add(2 * c.tp, 2 * c.tp + c.fp + c.fn);
    weighted_p.add(s * c.tp, c.tp + c.fp);
    weighted_r.add(s * c.tp, c.tp + c.fn);
    weighted_f.add(s * 2 * c.tp, 2 * c.tp + c.fp + c.fn);
  }
  if (total_support == 0) throw Error("gold labels are empty; weighted averages are undefined");
  r.micro = prf(tp, fp, fn);
  r.macro = {macro_p.divided_by(k), macro_r.divided_by(k), macro_f.divided_by(k)};
  r.weighted = {weighted_p.divided_by(total_support), weighted_r.divided_by(total_support),
                weighted_f.divided_by(total_support)};
  return r;
}

MetricsReport evaluate(const PredictionSet& pred, const LabelMap& gold, std::size_t num_classes) {
  return report_from_counts(class_counts(pred, gold, num_classes));
}

std::string MetricsReport::to_key_value() const {
  std::ostringstream out;
  const auto emit = [&](const std::string& prefix, const Prf& v) {
    out << prefix << "_precision=" << format_double(v.precision) << '\n'
        << prefix << "_recall=" << format_double(v.recall) << '\n'
        << prefix << "_f1=" << format_double(v.f1) << '\n';
  };
  emit("micro", micro);
  emit("macro", macro);
  emit("weighted", weighted);
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    emit("class_" + std::to_string(c), per_class[c]);
    out << "class_" << c << "_support=" << support[c] << '\n';
  }
  return out.str();
}

nlohmann::json MetricsReport::to_json() const {
  const auto obj = [](const Prf& v) {
    return nlohmann::json{{"precision", v.precision}, {"recall", v.recall}, {"f1", v.f1}};
  };
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    auto j = obj(per_class[c]);
    j["class_id"] = c;
    j["support"] = support[c];
    classes.push_back(std::move(j));
  }
  return {{"micro", obj(micro)}, {"macro", obj(macro)}, {"weighted", obj(weighted)}, {"per_class", classes}};
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

}  // namespace sustext
