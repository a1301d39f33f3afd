// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/cli/config.hpp"

#include <cmath>
#include <numbers>

#include "gdp/errors.hpp"

namespace gdp::cli {

Json parse_config(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

const Json& member(const Json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError("config is missing \"" + key + "\"");
  return obj.at(key);
}

double number(const Json& obj, const std::string& key) {
  const Json& v = member(obj, key);
  if (!v.is_number()) throw ConfigError("\"" + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const Json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? number(obj, key) : fallback;
}

std::size_t count_or(const Json& obj, const std::string& key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError("\"" + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

bool flag_or(const Json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError("\"" + key + "\" must be true or false");
  return obj.at(key).get<bool>();
}

std::vector<double> numbers(const Json& obj, const std::string& key) {
  const Json& v = member(obj, key);
  if (!v.is_array()) throw ConfigError("\"" + key + "\" must be an array of numbers");
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) throw ConfigError("\"" + key + "\" must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

MixingDistribution parse_mixing(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "point_mass_at_one")
    return MixingDistribution::point_mass_at_one();
  if (j.is_object() && j.size() == 1) {
    if (j.contains("beta")) {
      const Json& b = j.at("beta");
      return MixingDistribution::beta(number(b, "a"), number(b, "b"));
    }
    if (j.contains("grid")) {
      const Json& g = j.at("grid");
      return MixingDistribution::grid(numbers(g, "nodes"), numbers(g, "densities"));
    }
  }
  throw ConfigError("mixing must be {\"beta\": ...}, {\"grid\": ...} or \"point_mass_at_one\"");
}

namespace {

BaseDistribution parse_distribution(const Json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ConfigError("distribution must be an object with a single family key");
  const auto it = j.begin();
  const std::string& name = it.key();
  const Json& p = it.value();
  if (name == "normal") return Normal{number_or(p, "mean", 0.0), number_or(p, "sd", 1.0)};
  if (name == "uniform") return Uniform{number_or(p, "lo", 0.0), number_or(p, "hi", 1.0)};
  if (name == "two_point")
    return TwoPoint{number(p, "x0"), number(p, "x1"), number(p, "p1")};
  if (name == "cauchy")
    return Cauchy{number_or(p, "location", 0.0), number_or(p, "scale", 1.0)};
  if (name == "stable") return SymmetricStable{number(p, "alpha"), number_or(p, "scale", 1.0)};
  throw ConfigError("unknown distribution family \"" + name + "\"");
}

Transform parse_transform(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "identity") return Identity{};
  if (j.is_object() && j.size() == 1) {
    if (j.contains("indicator")) {
      const Json& a = j.at("indicator");
      return Indicator{number_or(a, "lo", -HUGE_VAL), number_or(a, "hi", HUGE_VAL)};
    }
    if (j.contains("tabulated")) {
      const Json& t = j.at("tabulated");
      return TabulatedFunction{numbers(t, "nodes"), numbers(t, "values")};
    }
  }
  throw ConfigError("transform must be \"identity\", {\"indicator\": ...} or {\"tabulated\": ...}");
}

}  // namespace

BaseMeasure parse_base(const Json& j) {
  const Json& dist = member(j, "distribution");
  return BaseMeasure(parse_distribution(dist),
                     j.contains("transform") ? parse_transform(j.at("transform")) : Identity{});
}

std::vector<double> parse_grid(const Json& j) {
  if (j.is_array()) {
    std::vector<double> out;
    for (const Json& x : j) {
      if (!x.is_number()) throw ConfigError("grid arrays must contain numbers");
      out.push_back(x.get<double>());
    }
    if (out.empty()) throw ConfigError("grid must not be empty");
    return out;
  }
  const double from = number(j, "from");
  const double to = number(j, "to");
  if (j.contains("per_decade")) {
    if (!(from > 0.0 && to > from)) throw ConfigError("log grid needs 0 < from < to");
    const std::size_t per = count_or(j, "per_decade", 10);
    if (per == 0) throw ConfigError("per_decade must be positive");
    const bool integer = flag_or(j, "integer", false);
    const double decades = std::log10(to / from);
    const auto steps = static_cast<std::size_t>(std::ceil(decades * per - 1e-9));
    std::vector<double> out;
    for (std::size_t k = 0; k <= steps; ++k) {
      double x = k == steps ? to : from * std::pow(10.0, static_cast<double>(k) / per);
      if (integer) x = std::round(x);
      if (out.empty() || x > out.back()) out.push_back(x);
    }
    return out;
  }
  const std::size_t count = count_or(j, "count", 0);
  if (count < 2 || !(to > from)) throw ConfigError("linear grid needs count >= 2 and to > from");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = k + 1 == count ? to : from + (to - from) * static_cast<double>(k) / (count - 1);
  return out;
}

GridFunction parse_grid_density(const Json& j) {
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    return GridFunction{numbers(g, "nodes"), numbers(g, "values")};
  }
  const Json& nrm = member(j, "normal");
  const double mean = number_or(nrm, "mean", 0.0);
  const double sd = number_or(nrm, "sd", 1.0);
  if (!(sd > 0.0)) throw ConfigError("normal density needs sd > 0");
  const std::size_t count = count_or(j, "count", 20001);
  const double lo = number_or(j, "lo", mean - 12.0 * sd);
  const double hi = number_or(j, "hi", mean + 12.0 * sd);
  return tabulate_function(
      [=](double x) {
        const double z = (x - mean) / sd;
        return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
      },
      lo, hi, count);
}

}  // namespace gdp::cli
