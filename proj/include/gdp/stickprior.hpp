// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gdp/base_measure.hpp"
#include "gdp/mixing.hpp"
#include "gdp/parallel.hpp"
#include "gdp/random.hpp"

namespace gdp {

inline constexpr double kDefaultEpsilon = 1e-12;
inline constexpr std::size_t kDefaultStickCap = 1'000'000;

/// Truncated stick-breaking realization.
///
/// gamma_1 = B_1, gamma_j = B_j prod_{k<j} (1 - B_k). Breaking stops at the
/// first J with remainder prod_{k<=J} (1 - B_k) < epsilon, or at the cap.
/// `atoms` is empty for a weights-only draw.
struct StickRealization {
  std::vector<double> weights;
  std::vector<double> atoms;
  std::vector<double> fractions;
  double remainder = 1.0;
  std::size_t truncation_level = 0;
  bool cap_reached = false;

  //! Compensated sum of the weights plus the remainder.
  double total_mass() const;
  //! sum_j gamma_j g(xi_j).
  double random_mean(const BaseMeasure& base) const;
  //! P([lo, hi)) = sum of weights of atoms in [lo, hi).
  double mass(double lo, double hi) const;
};

StickRealization sample_sticks(const MixingDistribution& mixing, double epsilon,
                               Engine& weights, std::size_t cap = kDefaultStickCap);
StickRealization sample_sticks(const MixingDistribution& mixing, double epsilon,
                               std::uint64_t seed, std::size_t cap = kDefaultStickCap);

//! Weights from the weight stream, atoms i.i.d. P0 from the atom stream.
StickRealization sample_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                double epsilon, Engine& weights, Engine& atoms,
                                std::size_t cap = kDefaultStickCap);
StickRealization sample_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                double epsilon, std::uint64_t seed,
                                std::size_t cap = kDefaultStickCap);

//! Iterates theta <- B Y + (1 - B) theta from theta = Y_0 and returns the
//! `steps - burn_in` states after the burn-in.
std::vector<double> mean_chain(const MixingDistribution& mixing, const BaseMeasure& base,
                               std::size_t steps, std::size_t burn_in, std::uint64_t seed);

//! Independent draws of the random mean, replicate i seeded from (seed, i).
std::vector<double> sample_random_means(const MixingDistribution& mixing,
                                        const BaseMeasure& base, std::size_t count,
                                        std::uint64_t seed, double epsilon = kDefaultEpsilon,
                                        Execution exec = Execution::parallel);

//! Independent draws of P([lo, hi)).
std::vector<double> sample_set_masses(const MixingDistribution& mixing, const BaseMeasure& base,
                                      double lo, double hi, std::size_t count,
                                      std::uint64_t seed, double epsilon = kDefaultEpsilon,
                                      Execution exec = Execution::parallel);

//! `weight,atom` rows with `#`-prefixed remainder and truncation lines.
void write_csv(std::ostream& os, const StickRealization& r);

}  // namespace gdp
