// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/acquisition.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sustext/error.hpp"

namespace sustext {

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;  // ln(sqrt(2 pi))

// ln h(z) with h(z) = z Phi(z) + phi(z), the expected improvement of a
// standard normal over 0 when shifted by z.
double log_h(double z) {
  if (z > -3.0) {
    const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * z * z - kLogSqrtTwoPi);
    return std::log(z * cdf + pdf);
  }
  // Lower tail, t = -z >= 3. With the Mills ratio
  //   Phi(-t) / phi(t) = 1 / (t + r),  r = 1 / (t + 2 / (t + 3 / (t + ...)))
  // we get h(-t) = phi(t) (1 - t / (t + r)) = phi(t) r / (t + r), which
  // avoids the cancellation in z Phi(z) + phi(z).
  const double t = -z;
  double tail = 0.0;
  for (int k = 200; k >= 2; --k) tail = k / (t + tail);
  const double r = 1.0 / (t + tail);
  return -0.5 * t * t - kLogSqrtTwoPi + std::log(r) - std::log(t + r);
}

}  // namespace

double log_expected_improvement(double mean, double std, double incumbent) {
  if (!(std > 0.0) || !std::isfinite(std)) throw Error("log_ei needs a positive finite std");
  const double z = (mean - incumbent) / std;
  if (std::isnan(z)) return kLogEiFloor;
  if (z == std::numeric_limits<double>::infinity()) return std::log(mean - incumbent);
  const double value = std::log(std) + log_h(z);
  return std::isfinite(value) ? value : kLogEiFloor;
}

}  // namespace sustext
