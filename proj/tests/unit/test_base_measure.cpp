// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "gdp/base_measure.hpp"
#include "gdp/errors.hpp"

namespace gdp {
namespace {

TEST(BaseMeasure, OracleInvariants) {
  const std::vector<BaseMeasure> bases = {
      BaseMeasure(Normal{1.5, 2.0}),
      BaseMeasure(Uniform{-1.0, 3.0}),
      BaseMeasure(TwoPoint{-1.0, 2.0, 0.3}),
      BaseMeasure(SymmetricStable{2.0, 0.5}),
      BaseMeasure(Normal{}, Indicator{0.0, 1.0}),
      BaseMeasure(Cauchy{}, Indicator{-1.0, 1.0}),
      BaseMeasure(Normal{}, TabulatedFunction{{-1.0, 0.0, 2.0}, {0.0, 1.0, 5.0}}),
  };
  for (const auto& b : bases) {
    for (double x : {-2.0, 0.0, 0.7}) EXPECT_EQ(b.moment_oracle(0, x), 1.0) << b.describe();
    EXPECT_NEAR(b.moment_oracle(1, b.mean_y()), 0.0, 1e-12) << b.describe();
    EXPECT_EQ(b.central_y_moment(1), 0.0);
  }
}

TEST(BaseMeasure, IndicatorOracleIsExact) {
  const BaseMeasure b(Normal{}, Indicator{-0.5, 1.0});
  const double p0 = b.probability(-0.5, 1.0);
  EXPECT_DOUBLE_EQ(b.mean_y(), p0);
  for (unsigned k = 0; k <= 6; ++k)
    for (double x : {-1.0, 0.2, 0.9})
      EXPECT_EQ(b.moment_oracle(k, x),
                p0 * std::pow(1.0 - x, k) + (1.0 - p0) * std::pow(-x, k));
}

TEST(BaseMeasure, GaussianCentralMoments) {
  const BaseMeasure b(Normal{0.0, 2.0});
  EXPECT_EQ(b.central_y_moment(2), 4.0);
  EXPECT_EQ(b.central_y_moment(3), 0.0);
  EXPECT_EQ(b.central_y_moment(4), 48.0);
  EXPECT_EQ(b.central_y_moment(6), 15.0 * 64.0);
}

TEST(BaseMeasure, TwoPointMoments) {
  const BaseMeasure b(TwoPoint{0.0, 1.0, 0.3});
  EXPECT_DOUBLE_EQ(b.mean_y(), 0.3);
  EXPECT_NEAR(b.central_y_moment(2), 0.21, 1e-15);
  EXPECT_NEAR(b.central_y_moment(3), 0.21 * 0.4, 1e-15);
  EXPECT_FALSE(b.atom_free());
  EXPECT_DOUBLE_EQ(b.probability(0.5, 2.0), 0.3);
}

TEST(BaseMeasure, ShiftedMomentsByBinomialTransport) {
  const BaseMeasure b(Uniform{0.0, 2.0});
  // E (U - 0)^3 for U ~ Uniform(0,2) is 2.
  EXPECT_NEAR(b.moment_oracle(3, 0.0), 2.0, 1e-14);
}

TEST(BaseMeasure, TabulatedTransformByQuadrature) {
  // g = identity on [-10, 10] behaves like identity for a standard normal.
  const BaseMeasure tab(Normal{}, TabulatedFunction{{-10.0, 10.0}, {-10.0, 10.0}});
  EXPECT_NEAR(tab.mean_y(), 0.0, 1e-12);
  EXPECT_NEAR(tab.central_y_moment(2), 1.0, 1e-10);
  EXPECT_NEAR(tab.central_y_moment(4), 3.0, 1e-9);
  // Clamp at zero: g(x) = max(x, 0) gives E = 1/sqrt(2 pi).
  const BaseMeasure relu(Normal{}, TabulatedFunction{{0.0, 50.0}, {0.0, 50.0}});
  EXPECT_NEAR(relu.mean_y(), 1.0 / std::sqrt(2.0 * M_PI), 1e-11);
}

TEST(BaseMeasure, HeavyTailsRefuseMomentsButSample) {
  const BaseMeasure c(Cauchy{});
  EXPECT_FALSE(c.has_finite_moments());
  EXPECT_THROW(c.mean_y(), HeavyTailError);
  EXPECT_THROW(c.moment_oracle(2, 0.0), HeavyTailError);
  EXPECT_THROW(BaseMeasure(SymmetricStable{1.5, 1.0}).central_y_moment(2), HeavyTailError);
  Engine eng(3);
  EXPECT_TRUE(std::isfinite(c.sample_y(eng)));
  // Bounded transforms of heavy-tailed bases have moments.
  const BaseMeasure ind(Cauchy{}, Indicator{-1.0, 1.0});
  EXPECT_NEAR(ind.mean_y(), 0.5, 1e-15);
}

TEST(BaseMeasure, StableTwoIsNormalWithVarianceTwo) {
  const BaseMeasure s(SymmetricStable{2.0, 1.0});
  EXPECT_NEAR(s.central_y_moment(2), 2.0, 1e-14);
  EXPECT_NEAR(s.cdf(1.0), 0.5 * std::erfc(-1.0 / 2.0), 1e-15);
}

TEST(BaseMeasure, RejectsInvalidParameters) {
  EXPECT_THROW(BaseMeasure(Normal{0.0, 0.0}), ConfigError);
  EXPECT_THROW(BaseMeasure(Uniform{1.0, 1.0}), ConfigError);
  EXPECT_THROW(BaseMeasure(TwoPoint{0, 1, 1.5}), ConfigError);
  EXPECT_THROW(BaseMeasure(SymmetricStable{2.5, 1.0}), ConfigError);
  EXPECT_THROW(BaseMeasure(Normal{}, TabulatedFunction{{1.0, 0.0}, {0.0, 1.0}}), ConfigError);
}

TEST(Transform, PiecewiseLinearWithConstantEnds) {
  const Transform g = TabulatedFunction{{0.0, 1.0, 2.0}, {1.0, 3.0, 2.0}};
  EXPECT_EQ(apply(g, -5.0), 1.0);
  EXPECT_EQ(apply(g, 0.5), 2.0);
  EXPECT_EQ(apply(g, 1.5), 2.5);
  EXPECT_EQ(apply(g, 9.0), 2.0);
  EXPECT_EQ(apply(Indicator{0.0, 1.0}, 1.0), 0.0);
  EXPECT_EQ(apply(Indicator{0.0, 1.0}, 0.0), 1.0);
}

}  // namespace
}  // namespace gdp
