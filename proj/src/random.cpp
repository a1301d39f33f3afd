// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/random.hpp"

#include <cmath>
#include <numbers>

#include "gdp/io.hpp"
#include "gdp/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gdp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, Stream stream, std::uint64_t index) {
  const auto tag = splitmix64(static_cast<std::uint64_t>(stream));
  return splitmix64(splitmix64(root ^ tag) + splitmix64(index));
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
  return splitmix64(root ^ splitmix64(io::fnv1a(label)));
}

Engine make_engine(std::uint64_t root, Stream stream, std::uint64_t index) {
  return Engine(derive_seed(root, stream, index));
}

double sample_beta(double a, double b, Engine& eng) {
  std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
  for (;;) {
    const double x = ga(eng);
    const double y = gb(eng);
    const double s = x + y;
    if (s > 0.0) return x / s;
  }
}

double sample_symmetric_stable(double alpha, Engine& eng) {
  std::uniform_real_distribution<double> unif(-0.5 * std::numbers::pi,
                                              0.5 * std::numbers::pi);
  std::exponential_distribution<double> expo(1.0);
  const double v = unif(eng);
  if (alpha == 1.0) return std::tan(v);
  const double w = expo(eng);
  return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * v) / w, (1.0 - alpha) / alpha);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace gdp
