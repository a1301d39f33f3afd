// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gdp/mixing.hpp"
#include "gdp/parallel.hpp"
#include "gdp/stickprior.hpp"

namespace gdp {

//! E W^p for W = sum_j gamma_j^2, from W = B^2 + (1-B)^2 W.
double w_moment(const MixingDistribution& mixing, unsigned p);

//! sum_j gamma_j^alpha + remainder^alpha.
double power_sum(const StickRealization& r, double alpha);

//! theta = scale * Z.
//!
//! normal_convention (alpha must be 2): scale = W^{1/2}, Z ~ N(0,1).
//! Otherwise scale = (sum gamma^alpha)^{1/alpha} and Z is symmetric
//! stable(alpha, 1) with characteristic function exp(-|u|^alpha); for
//! alpha = 2 that is N(0, 2).
//! Sticks are broken until remainder^alpha < epsilon.
struct ScaleMixture {
  double alpha = 2.0;
  bool normal_convention = true;
  double epsilon = kDefaultEpsilon;
  std::size_t cap = kDefaultStickCap;
};

std::vector<double> sample_scale_mixture(const MixingDistribution& mixing,
                                         const ScaleMixture& mixture, std::size_t count,
                                         std::uint64_t seed,
                                         Execution exec = Execution::parallel);

using CharacteristicFunction = std::function<std::complex<double>(double)>;

//! Empirical characteristic function of `samples`, tabulated at Chebyshev
//! points of [0, u_max] and evaluated by barycentric interpolation, with
//! L(-u) = conj L(u). Arguments beyond u_max are a DomainError.
CharacteristicFunction empirical_cf(std::span<const double> samples, double u_max,
                                    std::size_t nodes = 64,
                                    Execution exec = Execution::parallel);

struct CfResidual {
  std::vector<double> u;
  std::vector<double> residual;
  double max_residual = 0.0;
};

//! |L(u) - ∫ L0(u s) L(u (1 - s)) dH(s)| over the grid.
CfResidual cf_identity_residual(const MixingDistribution& mixing,
                                const CharacteristicFunction& cf_base,
                                const CharacteristicFunction& cf_mean,
                                std::span<const double> u_grid, double tol = 1e-11);

}  // namespace gdp
