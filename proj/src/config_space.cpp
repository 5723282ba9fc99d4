// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/config_space.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "sustext/error.hpp"
#include "sustext/io.hpp"

namespace sustext {

namespace {

ParamKind parse_kind(const std::string& s) {
  if (s == "log_float") return ParamKind::log_float;
  if (s == "linear_float") return ParamKind::linear_float;
  if (s == "stepped_float") return ParamKind::stepped_float;
  if (s == "integer") return ParamKind::integer;
  if (s == "categorical") return ParamKind::categorical;
  throw Error("unknown parameter kind '" + s + "'");
}

// Drops the binary noise of lower + k * step (0.3 + 3 * 0.01).
double round_to_grid(double v) { return std::round(v * 1e12) / 1e12; }

std::int64_t grid_steps(const ParamSpec& p) {
  return static_cast<std::int64_t>(std::llround((p.upper - p.lower) / p.step));
}

std::string describe(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return std::to_string(*d);
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return "'" + std::get<std::string>(v) + "'";
}

}  // namespace

std::string_view to_string(ParamKind k) {
  switch (k) {
    case ParamKind::log_float: return "log_float";
    case ParamKind::linear_float: return "linear_float";
    case ParamKind::stepped_float: return "stepped_float";
    case ParamKind::integer: return "integer";
    case ParamKind::categorical: return "categorical";
  }
  return "linear_float";
}

double as_double(const ParamValue& value) {
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  throw Error("expected a numeric value, got " + describe(value));
}

std::int64_t as_int(const ParamValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  if (const auto* d = std::get_if<double>(&value); d && std::floor(*d) == *d) return static_cast<std::int64_t>(*d);
  throw Error("expected an integer value, got " + describe(value));
}

void ParamSpec::validate() const {
  if (name.empty()) throw Error("parameter name must not be empty");
  if (kind == ParamKind::categorical) {
    if (choices.empty()) throw Error("categorical '" + name + "' needs at least one choice");
    std::unordered_set<std::string> unique(choices.begin(), choices.end());
    if (unique.size() != choices.size()) throw Error("categorical '" + name + "' has duplicate choices");
  } else {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
      throw Error("parameter '" + name + "' needs lower < upper");
    }
    if (kind == ParamKind::log_float && !(lower > 0.0)) throw Error("log parameter '" + name + "' needs lower > 0");
    if (kind == ParamKind::stepped_float) {
      if (!(step > 0.0)) throw Error("stepped parameter '" + name + "' needs step > 0");
      const double steps = (upper - lower) / step;
      if (std::abs(steps - std::round(steps)) > 1e-6) {
        throw Error("stepped parameter '" + name + "': range is not a multiple of step");
      }
    }
    if (kind == ParamKind::integer && (std::floor(lower) != lower || std::floor(upper) != upper)) {
      throw Error("integer parameter '" + name + "' needs integral bounds");
    }
  }
  if (default_value) encode(*default_value);
}

double ParamSpec::encode(const ParamValue& value) const {
  const auto out_of_range = [&] {
    return Error("value " + describe(value) + " is outside parameter '" + name + "'");
  };
  switch (kind) {
    case ParamKind::categorical: {
      const auto* s = std::get_if<std::string>(&value);
      if (!s) throw out_of_range();
      const auto it = std::find(choices.begin(), choices.end(), *s);
      if (it == choices.end()) throw out_of_range();
      return static_cast<double>(it - choices.begin());
    }
    case ParamKind::integer: {
      const std::int64_t v = as_int(value);
      if (v < static_cast<std::int64_t>(lower) || v > static_cast<std::int64_t>(upper)) throw out_of_range();
      return (static_cast<double>(v) - lower) / (upper - lower);
    }
    case ParamKind::log_float: {
      const double v = as_double(value);
      if (!(v >= lower && v <= upper)) throw out_of_range();
      return (std::log(v) - std::log(lower)) / (std::log(upper) - std::log(lower));
    }
    case ParamKind::stepped_float: {
      const double v = as_double(value);
      if (!(v >= lower - 1e-9 && v <= upper + 1e-9)) throw out_of_range();
      const double k = (v - lower) / step;
      if (std::abs(k - std::round(k)) > 1e-6) throw out_of_range();
      return std::clamp((v - lower) / (upper - lower), 0.0, 1.0);
    }
    case ParamKind::linear_float: {
      const double v = as_double(value);
      if (!(v >= lower && v <= upper)) throw out_of_range();
      return (v - lower) / (upper - lower);
    }
  }
  throw out_of_range();
}

ParamValue ParamSpec::decode(double position) const {
  if (kind == ParamKind::categorical) {
    const auto last = static_cast<double>(choices.size() - 1);
    const auto code = static_cast<std::size_t>(std::clamp(std::round(position), 0.0, last));
    return choices[code];
  }
  const double u = std::clamp(position, 0.0, 1.0);
  switch (kind) {
    case ParamKind::integer:
      return static_cast<std::int64_t>(std::llround(lower + u * (upper - lower)));
    case ParamKind::log_float:
      return std::clamp(std::exp(std::log(lower) + u * (std::log(upper) - std::log(lower))), lower, upper);
    case ParamKind::stepped_float: {
      const auto k = std::llround(u * (upper - lower) / step);
      return round_to_grid(lower + static_cast<double>(std::clamp<std::int64_t>(k, 0, grid_steps(*this))) * step);
    }
    default:
      return lower + u * (upper - lower);
  }
}

ParamValue ParamSpec::sample(Rng& rng) const {
  switch (kind) {
    case ParamKind::categorical:
      return choices[static_cast<std::size_t>(rng.below(choices.size()))];
    case ParamKind::integer:
      return rng.uniform_int(static_cast<std::int64_t>(lower), static_cast<std::int64_t>(upper));
    case ParamKind::log_float:
      return std::clamp(std::exp(rng.uniform(std::log(lower), std::log(upper))), lower, upper);
    case ParamKind::stepped_float:
      return round_to_grid(lower + static_cast<double>(rng.uniform_int(0, grid_steps(*this))) * step);
    case ParamKind::linear_float:
      return rng.uniform(lower, upper);
  }
  return lower;
}

ConfigSpace::ConfigSpace(std::vector<ParamSpec> params) : params_(std::move(params)) {
  std::unordered_set<std::string> names;
  for (const auto& p : params_) {
    p.validate();
    if (!names.insert(p.name).second) throw Error("duplicate parameter name '" + p.name + "'");
  }
}

ConfigSpace ConfigSpace::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("config space must be a JSON array of parameter records");
  std::vector<ParamSpec> params;
  for (const auto& r : j) {
    ParamSpec p;
    p.name = r.at("name").get<std::string>();
    p.kind = parse_kind(r.at("kind").get<std::string>());
    if (p.kind == ParamKind::categorical) {
      p.choices = r.at("choices").get<std::vector<std::string>>();
    } else {
      p.lower = r.at("lower").get<double>();
      p.upper = r.at("upper").get<double>();
      if (p.kind == ParamKind::stepped_float) p.step = r.at("step").get<double>();
    }
    if (const auto it = r.find("default"); it != r.end()) {
      if (p.kind == ParamKind::categorical) {
        p.default_value = it->get<std::string>();
      } else if (p.kind == ParamKind::integer) {
        p.default_value = it->get<std::int64_t>();
      } else {
        p.default_value = it->get<double>();
      }
    }
    params.push_back(std::move(p));
  }
  return ConfigSpace(std::move(params));
}

ConfigSpace ConfigSpace::load(const std::filesystem::path& path) { return from_json(read_json_file(path)); }

const ParamSpec& ConfigSpace::param(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return p;
  }
  throw Error("unknown parameter '" + std::string(name) + "'");
}

void ConfigSpace::validate(const Config& config) const {
  for (const auto& p : params_) {
    const auto it = config.find(p.name);
    if (it == config.end()) throw Error("configuration lacks parameter '" + p.name + "'");
    p.encode(it->second);
  }
  if (config.size() != params_.size()) throw Error("configuration has parameters outside the space");
}

std::optional<Config> ConfigSpace::default_config() const {
  Config c;
  for (const auto& p : params_) {
    if (!p.default_value) return std::nullopt;
    c[p.name] = *p.default_value;
  }
  return c;
}

Config sample_config(const ConfigSpace& space, Rng& rng) {
  Config c;
  for (const auto& p : space.params()) c[p.name] = p.sample(rng);
  return c;
}

std::vector<double> encode_config(const ConfigSpace& space, const Config& config) {
  std::vector<double> out;
  out.reserve(space.dimension());
  for (const auto& p : space.params()) {
    const auto it = config.find(p.name);
    if (it == config.end()) throw Error("configuration lacks parameter '" + p.name + "'");
    out.push_back(p.encode(it->second));
  }
  return out;
}

Config decode_config(const ConfigSpace& space, std::span<const double> encoded) {
  if (encoded.size() != space.dimension()) throw Error("encoded vector has the wrong dimension");
  Config c;
  for (std::size_t i = 0; i < encoded.size(); ++i) c[space.params()[i].name] = space.params()[i].decode(encoded[i]);
  return c;
}

nlohmann::json to_json(const ParamValue& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

nlohmann::json to_json(const Config& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : config) j[k] = to_json(v);
  return j;
}

Config config_from_json(const ConfigSpace& space, const nlohmann::json& j) {
  Config c;
  for (const auto& p : space.params()) {
    const auto& v = j.at(p.name);
    if (p.kind == ParamKind::categorical) {
      c[p.name] = v.get<std::string>();
    } else if (p.kind == ParamKind::integer) {
      c[p.name] = v.get<std::int64_t>();
    } else {
      c[p.name] = v.get<double>();
    }
  }
  space.validate(c);
  return c;
}

}  // namespace sustext
