// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gdp {

using Engine = std::mt19937_64;

//! Fixed stream offsets. Weight and atom draws never share a stream, so a
//! change of base measure leaves the stick weights untouched.
enum class Stream : std::uint64_t {
  weights = 0x57a1,
  atoms = 0xa70b,
  indexes = 0x1d3e,
  noise = 0x9015,
};

std::uint64_t splitmix64(std::uint64_t x);

//! Child seed for replicate `index` of stream `stream` under `root`.
std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                          std::uint64_t index = 0);

//! Child seed keyed by a stable label (FNV-1a of the label).
std::uint64_t derive_seed(std::uint64_t root, std::string_view label);

Engine make_engine(std::uint64_t root, Stream stream, std::uint64_t index = 0);

double sample_beta(double a, double b, Engine& eng);

//! Symmetric stable(alpha, 1) with characteristic function exp(-|u|^alpha),
//! Chambers–Mallows–Stuck transform.
double sample_symmetric_stable(double alpha, Engine& eng);

}  // namespace gdp
