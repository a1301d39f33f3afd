// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "gdp/mixing.hpp"
#include "gdp/parallel.hpp"

namespace gdp {

//! Piecewise-linear function through (nodes, values), zero outside.
struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;

  double operator()(double x) const;
  //! Trapezoid integral over the nodes.
  double mass() const;
};

GridFunction tabulate_function(const std::function<double(double)>& f, double lo, double hi,
                               std::size_t count);

struct DensityEstimate {
  std::vector<double> t;
  std::vector<double> density;
  GridFunction posterior;  // pi(theta | data) on the prior grid
  double w;
  double posterior_mean;
  double posterior_sd;
};

//! Tolerated trapezoid mass deficiency of the input grids.
inline constexpr double kGridMassTolerance = 1e-6;

/// Semiparametric density estimate for y_i = theta + e_i with e_i ~ P,
/// P ~ GD(H, P0) centred on the error density p0:
///   p(t) = w_n p0(t) + (1 - w_n) n^{-1} sum_i pi(y_i - t | data).
/// The location posterior is computed on the prior grid in log space and
/// normalized by the trapezoid rule.
DensityEstimate density_estimate(std::span<const double> data, const GridFunction& prior,
                                 const GridFunction& p0, const MixingDistribution& mixing,
                                 std::span<const double> t_grid,
                                 Execution exec = Execution::parallel);

}  // namespace gdp
