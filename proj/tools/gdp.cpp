// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "gdp/cli/run.hpp"

int main(int argc, char** argv) { return gdp::cli::run(argc, argv, std::cout, std::cerr); }
