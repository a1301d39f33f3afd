// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Replicate fan-out kernels. Every kernel has a serial path, kept as the
// reference, and an OpenMP path. Each replicate owns an engine seeded from
// (root, stream, index) and results land in index order, so both paths
// produce bit-identical output.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gdp/random.hpp"

namespace gdp {

enum class Execution { serial, parallel };

int max_threads();

//! result[i] = draw(engine_i, i) for i < count.
template <class T, class Draw>
std::vector<T> replicate(std::size_t count, std::uint64_t root, Stream stream,
                         Draw&& draw, Execution exec = Execution::parallel) {
  std::vector<T> out(count);
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) {
      Engine eng = make_engine(root, stream, static_cast<std::uint64_t>(i));
      out[i] = draw(eng, static_cast<std::size_t>(i));
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      Engine eng = make_engine(root, stream, static_cast<std::uint64_t>(i));
      out[i] = draw(eng, static_cast<std::size_t>(i));
    }
  }
  return out;
}

//! out[i] = f(i), no randomness.
template <class T, class F>
std::vector<T> tabulate(std::size_t count, F&& f,
                        Execution exec = Execution::parallel) {
  std::vector<T> out(count);
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) out[i] = f(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = f(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace gdp
