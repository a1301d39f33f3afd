// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdp/cli/config.hpp"
#include "gdp/cli/output.hpp"

namespace gdp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
};

const std::vector<std::string>& subcommands();

struct Outcome {
  std::vector<Artifact> artifacts;
  std::string summary;
};

//! Runs one subcommand in memory. Throws the library's error types.
Outcome execute(const std::string& command, const Json& config, std::uint64_t seed);

//! `gdp <subcommand> --config <path> --out <dir> --seed <u64>`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gdp::cli
