// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace gdp {

inline constexpr std::string_view kToolName = "gdp";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace gdp
