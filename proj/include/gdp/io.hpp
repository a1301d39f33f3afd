// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gdp::io {

//! Shortest round-trip text for x (at most 17 significant digits).
std::string format_double(double x);

//! 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

std::string hex64(std::uint64_t x);

}  // namespace gdp::io
