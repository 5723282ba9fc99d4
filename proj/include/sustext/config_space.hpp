// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sustext/rng.hpp"

namespace sustext {

enum class ParamKind { log_float, linear_float, stepped_float, integer, categorical };

std::string_view to_string(ParamKind k);

using ParamValue = std::variant<double, std::int64_t, std::string>;
using Config = std::map<std::string, ParamValue>;

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::linear_float;
  double lower = 0.0;
  double upper = 1.0;
  double step = 0.0;                 // stepped_float only
  std::vector<std::string> choices;  // categorical only
  std::optional<ParamValue> default_value;

  void validate() const;
  bool is_categorical() const { return kind == ParamKind::categorical; }

  // Position in [0, 1] (code for categoricals). Throws when out of range.
  double encode(const ParamValue& value) const;
  // Inverse of encode; clamps and snaps to the grid.
  ParamValue decode(double position) const;
  ParamValue sample(Rng& rng) const;
};

class ConfigSpace {
 public:
  ConfigSpace() = default;
  explicit ConfigSpace(std::vector<ParamSpec> params);

  static ConfigSpace from_json(const nlohmann::json& j);
  static ConfigSpace load(const std::filesystem::path& path);

  const std::vector<ParamSpec>& params() const { return params_; }
  std::size_t dimension() const { return params_.size(); }
  const ParamSpec& param(std::string_view name) const;

  // Throws sustext::Error naming the offending parameter.
  void validate(const Config& config) const;

  // Set when every parameter declares a default.
  std::optional<Config> default_config() const;

 private:
  std::vector<ParamSpec> params_;
};

// log_float uniform in log-space, linear uniform, stepped on the grid,
// integer inclusive, categorical uniform over choices.
Config sample_config(const ConfigSpace& space, Rng& rng);

std::vector<double> encode_config(const ConfigSpace& space, const Config& config);
Config decode_config(const ConfigSpace& space, std::span<const double> encoded);

nlohmann::json to_json(const ParamValue& value);
nlohmann::json to_json(const Config& config);
Config config_from_json(const ConfigSpace& space, const nlohmann::json& j);

double as_double(const ParamValue& value);
std::int64_t as_int(const ParamValue& value);

}  // namespace sustext
