// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/moments.hpp"

#include <cmath>
#include <string>

#include "gdp/errors.hpp"
#include "gdp/numerics.hpp"

namespace gdp {

namespace {

void check_order(unsigned p, unsigned max_order) {
  if (p > max_order)
    throw DomainError("moment order " + std::to_string(p) + " exceeds the maximum " +
                      std::to_string(max_order));
}

void check_flex(double b0, double x) {
  if (!(b0 > 0.0)) throw ConfigError("b0 must be positive");
  if (!(x > 0.5)) throw DomainError("flexibility family needs x > 1/2");
}

}  // namespace

std::vector<double> central_moments(const MixingDistribution& mixing, const BaseMeasure& base,
                                    unsigned p, unsigned max_order) {
  check_order(p, max_order);
  std::vector<double> mu(p + 1);
  for (unsigned k = 0; k <= p; ++k) mu[k] = base.central_y_moment(k);
  std::vector<double> m(p + 1, 0.0);
  m[0] = 1.0;
  for (unsigned q = 2; q <= p; ++q) {
    double acc = 0.0;
    for (unsigned j = 0; j + 1 < q; ++j)
      acc += numerics::binomial(q, j) * mixing.product_moment(q - j, j) * mu[q - j] * m[j];
    m[q] = acc / mixing.one_minus_bbar_moment(q);
  }
  return m;
}

double central_moment(const MixingDistribution& mixing, const BaseMeasure& base, unsigned p,
                      double x, unsigned max_order) {
  const auto m = central_moments(mixing, base, p, max_order);
  const double shift = base.mean_y() - x;
  double acc = 0.0;
  for (unsigned k = 0; k <= p; ++k)
    acc += numerics::binomial(p, k) * m[k] * std::pow(shift, static_cast<double>(p - k));
  return acc;
}

SummaryMoments summary_moments(const MixingDistribution& mixing, const BaseMeasure& base) {
  const double m20 = mixing.product_moment(2, 0);
  const double m30 = mixing.product_moment(3, 0);
  const double m40 = mixing.product_moment(4, 0);
  const double m22 = mixing.product_moment(2, 2);
  const double var_factor = m20 / mixing.one_minus_bbar_moment(2);
  const double s2 = base.central_y_moment(2);
  const double mu3 = base.central_y_moment(3);
  const double mu4 = base.central_y_moment(4);
  SummaryMoments out{};
  out.mean = base.mean_y();
  out.variance = var_factor * s2;
  out.third_central = m30 / mixing.one_minus_bbar_moment(3) * mu3;
  out.fourth_central = (m40 * mu4 + 6.0 * m22 * s2 * s2 * var_factor) /
                       mixing.one_minus_bbar_moment(4);
  return out;
}

SetProbMoments set_prob_moments(const MixingDistribution& mixing, double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw ConfigError("p0 must lie in [0,1]");
  const double q = p0 * (1.0 - p0);
  return {p0, mixing.product_moment(2, 0) / mixing.one_minus_bbar_moment(2) * q,
          mixing.product_moment(3, 0) / mixing.one_minus_bbar_moment(3) * q * (1.0 - 2.0 * p0)};
}

double skewness_ratio(double b0, double x) {
  check_flex(b0, x);
  const double a = 2.0 * x - 1.0;
  const double b = b0 * x;
  const double num = (a + 1.0) * (a + 2.0);
  const double den = a * a + 3.0 * a * (b + 1.0) + 3.0 * b * b + 6.0 * b + 2.0;
  return num / den * (b0 + 1.0) * (b0 + 2.0) / 2.0;
}

SkewnessCurve skewness_ratio_curve(double b0, std::span<const double> x_grid) {
  if (!(b0 > 0.0)) throw ConfigError("b0 must be positive");
  SkewnessCurve c;
  for (double x : x_grid) c.points.push_back({x, 2.0 * x - 1.0, b0 * x, skewness_ratio(b0, x)});
  const double f = (b0 + 1.0) * (b0 + 2.0);
  c.rho_max = f / (2.0 + 3.0 * b0 + 0.75 * b0 * b0);
  c.rho_min = 2.0 * f / (4.0 + 6.0 * b0 + 3.0 * b0 * b0);
  return c;
}

namespace {

double fourth_central_unit(const MixingDistribution& h, double q) {
  const double var_factor = h.product_moment(2, 0) / h.one_minus_bbar_moment(2);
  return (h.product_moment(4, 0) * q + 6.0 * h.product_moment(2, 2) * var_factor) /
         h.one_minus_bbar_moment(4);
}

}  // namespace

double kurtosis_ratio(double b0, double x, double q) {
  check_flex(b0, x);
  const auto h = MixingDistribution::beta(2.0 * x - 1.0, b0 * x);
  const auto dirichlet = MixingDistribution::beta(1.0, b0);
  return fourth_central_unit(h, q) / fourth_central_unit(dirichlet, q);
}

std::vector<FlexPoint> kurtosis_ratio_curve(double b0, std::span<const double> x_grid,
                                            double q) {
  std::vector<FlexPoint> out;
  for (double x : x_grid) out.push_back({x, 2.0 * x - 1.0, b0 * x, kurtosis_ratio(b0, x, q)});
  return out;
}

}  // namespace gdp
