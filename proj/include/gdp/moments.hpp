// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "gdp/base_measure.hpp"
#include "gdp/mixing.hpp"

namespace gdp {

inline constexpr unsigned kDefaultMaxMomentOrder = 12;

//! E (theta - theta0)^k for k = 0..p, by the binomial moment recursion.
std::vector<double> central_moments(const MixingDistribution& mixing, const BaseMeasure& base,
                                    unsigned p, unsigned max_order = kDefaultMaxMomentOrder);

//! E (theta - x)^p for theta = ∫ g dP.
double central_moment(const MixingDistribution& mixing, const BaseMeasure& base, unsigned p,
                      double x, unsigned max_order = kDefaultMaxMomentOrder);

struct SummaryMoments {
  double mean;
  double variance;
  double third_central;
  double fourth_central;
};

//! Closed forms, independent of the recursion.
SummaryMoments summary_moments(const MixingDistribution& mixing, const BaseMeasure& base);

struct SetProbMoments {
  double mean;
  double variance;
  double third_central;
};

//! Moments of P(A) given p0 = P0(A).
SetProbMoments set_prob_moments(const MixingDistribution& mixing, double p0);

//! Point on a flexibility curve: H = Beta(a, b) with a = 2x - 1, b = b0 x.
struct FlexPoint {
  double x;
  double a;
  double b;
  double value;
};

//! Skewness of theta under Beta(2x-1, b0 x) over that under Beta(1, b0).
//! The variance is the same for every x > 1/2.
double skewness_ratio(double b0, double x);

struct SkewnessCurve {
  std::vector<FlexPoint> points;
  double rho_max;  // limit as x -> 1/2
  double rho_min;  // limit as x -> infinity
};

SkewnessCurve skewness_ratio_curve(double b0, std::span<const double> x_grid);

//! Kurtosis ratio for the same family when P0 has unit variance and fourth
//! central moment q.
double kurtosis_ratio(double b0, double x, double q = 3.0);

std::vector<FlexPoint> kurtosis_ratio_curve(double b0, std::span<const double> x_grid,
                                            double q = 3.0);

}  // namespace gdp
