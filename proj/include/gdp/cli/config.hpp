// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdp/base_measure.hpp"
#include "gdp/density.hpp"
#include "gdp/mixing.hpp"

namespace gdp::cli {

using Json = nlohmann::json;

//! Parses config text; syntax errors become ConfigError.
Json parse_config(const std::string& text);

double number(const Json& obj, const std::string& key);
double number_or(const Json& obj, const std::string& key, double fallback);
std::size_t count_or(const Json& obj, const std::string& key, std::size_t fallback);
bool flag_or(const Json& obj, const std::string& key, bool fallback);
std::vector<double> numbers(const Json& obj, const std::string& key);
const Json& member(const Json& obj, const std::string& key);

//! {"beta": {"a", "b"}} | {"grid": {"nodes", "densities"}} | "point_mass_at_one"
MixingDistribution parse_mixing(const Json& j);

//! {"distribution": {...}, "transform": "identity" | {"indicator": {"lo","hi"}} |
//!  {"tabulated": {"nodes","values"}}}
BaseMeasure parse_base(const Json& j);

//! Either an explicit array or {"from", "to", "count"} (linear) or
//! {"from", "to", "per_decade"} (logarithmic, rounded to integers when
//! "integer" is true).
std::vector<double> parse_grid(const Json& j);

//! {"normal": {"mean","sd"}, "lo", "hi", "count"} or {"grid": {"nodes","values"}}.
GridFunction parse_grid_density(const Json& j);

}  // namespace gdp::cli
