// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

namespace sustext {

// Returned when expected improvement underflows to zero.
inline constexpr double kLogEiFloor = -1e300;

// log E[max(0, f - incumbent)] for f ~ N(mean, std^2), i.e. for a
// maximization problem. Stable far into the lower tail. Throws when
// std <= 0.
double log_expected_improvement(double mean, double std, double incumbent);

}  // namespace sustext
