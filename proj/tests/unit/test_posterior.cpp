// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gdp/errors.hpp"
#include "gdp/posterior.hpp"
#include "stat_oracles.hpp"

namespace gdp {
namespace {

using testing::mean_se;
using testing::variance_se;
using testing::within_se;

std::vector<double> normal_points(std::size_t n, std::uint64_t seed) {
  Engine eng(seed);
  std::normal_distribution<double> z;
  std::vector<double> xs(n);
  for (double& x : xs) x = z(eng);
  return xs;
}

TEST(Dataset, ClassifiesMultiplicity) {
  EXPECT_EQ(Dataset::classify({1, 2, 3}).profile(), Dataset::Profile::all_distinct);
  const auto d = Dataset::classify({1, 2, 1, 4});
  EXPECT_EQ(d.profile(), Dataset::Profile::doubleton_tie);
  EXPECT_EQ(d.tie(), (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_THROW(Dataset::classify({1, 1, 1}), UnsupportedConfiguration);
  EXPECT_THROW(Dataset::classify({1, 1, 2, 2}), UnsupportedConfiguration);
  EXPECT_THROW(Dataset::distinct({1, 1}), UnsupportedConfiguration);
  EXPECT_THROW(Dataset::doubleton({1, 2}), UnsupportedConfiguration);
}

TEST(Constants, DistinctWeightsSumToOne) {
  for (const auto& h : {MixingDistribution::beta(0.5, 0.5), MixingDistribution::beta(2, 3)})
    for (std::size_t n : {1u, 2u, 7u, 40u}) {
      const auto r = constants(h, n).ratios;
      EXPECT_DOUBLE_EQ(r.nb + r.c, 1.0);
    }
}

TEST(Constants, IdentityFullSampleSpace) {
  const auto h = MixingDistribution::beta(2, 3);
  const auto r = constants(h, 10).ratios;
  const double n = 10;
  EXPECT_NEAR(r.nd + r.nn1g + (2 * n + 1) * r.b_next + r.c_next, 1.0, 1e-9);
}

TEST(Constants, IdentityOnSimplex) {
  Engine eng(17);
  std::exponential_distribution<double> ex;
  for (const auto& h : {MixingDistribution::beta(0.5, 3), MixingDistribution::beta(2, 1)})
    for (std::size_t n : {1u, 2u, 4u, 15u}) {
      const auto r = constants(h, n).ratios;
      std::vector<double> p(n);
      double tot = 0, sq = 0;
      for (double& v : p) tot += (v = ex(eng));
      for (double& v : p) sq += (v /= tot) * v;
      const double dn = static_cast<double>(n);
      EXPECT_NEAR(r.nd + r.e + r.f * sq + r.nn1g + (2 * dn - 2) * r.h + r.i * (1 - sq), 1.0, 1e-9);
    }
}

TEST(Constants, TailIdentities) {
  const auto h = MixingDistribution::beta(0.7, 1.9);
  const auto ds = delta_sequence(h, 30);
  for (std::size_t n : {2u, 5u, 29u}) {
    const auto r = constants(h, n).ratios;
    const double expect = (n + 2.0) * (n + 1.0) * ds.delta[n + 1] * ds.delta[n];
    EXPECT_NEAR(r.f, expect, 1e-12 * expect);
    EXPECT_NEAR(r.i, expect, 1e-12 * expect);
    EXPECT_DOUBLE_EQ(r.a_next2, expect);
  }
}

TEST(Constants, RawRecursionOracle) {
  const auto h = MixingDistribution::beta(2, 3);
  const auto raw = raw_constants(h, 20);
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto pc = constants(h, n);
    const double a = raw.a[n];
    const double dn = static_cast<double>(n);
    EXPECT_NEAR(std::exp(pc.log_a), a, 1e-12 * a);
    EXPECT_NEAR(pc.ratios.nd, dn * raw.d[n] / a, 1e-11 * pc.ratios.nd);
    EXPECT_NEAR(pc.ratios.e, raw.e[n] / a, 1e-11 * pc.ratios.e);
    EXPECT_NEAR(pc.ratios.f, raw.f[n] / a, 1e-11 * pc.ratios.f);
    EXPECT_NEAR(pc.ratios.b_next, raw.b[n + 1] / a, 1e-11 * pc.ratios.b_next);
    if (n >= 2) {
      EXPECT_NEAR(pc.ratios.nn1g, dn * (dn - 1) * raw.g[n] / a, 1e-11 * pc.ratios.nn1g);
      EXPECT_NEAR(pc.ratios.h, raw.h[n] / a, 1e-11 * pc.ratios.h);
      EXPECT_NEAR(pc.ratios.i, raw.i[n] / a, 1e-11 * pc.ratios.i);
    }
  }
}

TEST(Constants, DirichletSecondPointDistinct) {
  for (double b : {0.5, 2.0, 9.0})
    EXPECT_NEAR(prob_distinct(MixingDistribution::beta(1, b), 2), b / (1 + b), 1e-15);
  EXPECT_NEAR(prob_distinct(MixingDistribution::beta(1, 2), 2), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(prob_distinct(MixingDistribution::beta(3, 1), 1), 1.0);
  EXPECT_THROW(constants(MixingDistribution::beta(1, 1), 0), ConfigError);
}

TEST(Constants, LargeNStaysFinite) {
  const auto pc = constants(MixingDistribution::beta(2, 3), 2000);
  EXPECT_TRUE(std::isfinite(pc.log_a));
  EXPECT_LT(pc.log_a, -1000.0);
  const auto& r = pc.ratios;
  EXPECT_NEAR(r.nd + r.nn1g + 4001.0 * r.b_next + r.c_next, 1.0, 1e-9);
}

TEST(PosteriorMean, NoDataReturnsPrior) {
  const BaseMeasure base(Normal{0.4, 1.0});
  const auto m = posterior_mean(MixingDistribution::beta(2, 3), base, Dataset::distinct({}));
  EXPECT_EQ(m.w, 1.0);
  EXPECT_EQ(m.value, 0.4);
}

TEST(PosteriorMean, DirichletSetExample) {
  // Two of seven points in A = [0, inf), P0(A) = 0.5.
  const BaseMeasure base(Normal{}, Indicator{0.0, HUGE_VAL});
  const auto data = Dataset::distinct({-3.1, -2.2, -1.3, -0.4, -0.2, 0.5, 1.9});
  EXPECT_NEAR(posterior_mean(MixingDistribution::beta(1, 3), base, data).value, 0.35, 1e-15);
}

TEST(PosteriorMean, ClosedFormWeight) {
  const auto ds = delta_sequence(MixingDistribution::beta(2, 3), 5);
  EXPECT_NEAR(beta_w(2, 3, 5), ds.w[5], 1e-12);
  for (double n : {1.0, 17.0, 300.0})
    EXPECT_NEAR(beta_w(1, 4, n), 4 / (4 + n), 1e-14);
}

TEST(PosteriorMean, RejectsTiesAndAtoms) {
  const auto h = MixingDistribution::beta(1, 1);
  EXPECT_THROW(posterior_mean(h, BaseMeasure::standard_normal(), Dataset::doubleton({1, 1})),
               UnsupportedConfiguration);
  EXPECT_THROW(posterior_mean(h, BaseMeasure(TwoPoint{}), Dataset::distinct({0, 1})),
               UnsupportedConfiguration);
}

TEST(PosteriorSecondMoment, ConstantFunctionalIsOne) {
  const BaseMeasure one(Normal{}, Indicator{-HUGE_VAL, HUGE_VAL});
  for (const auto& h : {MixingDistribution::beta(0.5, 3), MixingDistribution::beta(2, 1)}) {
    const auto m = posterior_second_moment(h, one, Dataset::distinct(normal_points(9, 1)));
    EXPECT_NEAR(m.second_moment, 1.0, 1e-12);
    EXPECT_NEAR(m.variance, 0.0, 1e-12);
  }
}

TEST(PosteriorSecondMoment, DirichletConjugacy) {
  const BaseMeasure base(Normal{}, Indicator{-0.3, 0.6});
  for (double b : {0.5, 1.0, 3.0, 10.0})
    for (std::size_t n : {1u, 2u, 5u, 30u}) {
      const auto h = MixingDistribution::beta(1, b);
      const auto m = posterior_second_moment(h, base, Dataset::distinct(normal_points(n, n)));
      EXPECT_NEAR(m.variance, m.mean * (1 - m.mean) / (1 + b + n), 1e-10) << b << " " << n;
    }
}

// Quantile design keeps the empirical set frequency fixed as n grows.
std::vector<double> normal_quantiles(std::size_t n) {
  const boost::math::normal z;
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = quantile(z, (i + 0.5) / static_cast<double>(n));
  return xs;
}

TEST(PosteriorSecondMoment, VarianceDecayRate) {
  const BaseMeasure base(Normal{}, Indicator{0.0, 1.0});
  for (double a : {0.5, 1.0, 2.0, 3.0})
    for (double b : {0.5, 1.0, 3.0}) {
      const auto h = MixingDistribution::beta(a, b);
      const auto ds = delta_sequence(h, 100);
      const double v10 = posterior_second_moment(h, base, Dataset::distinct(normal_quantiles(10))).variance;
      const double v100 = posterior_second_moment(h, base, Dataset::distinct(normal_quantiles(100))).variance;
      const double ratio = v100 / v10;
      EXPECT_GT(ratio, 0.1 / 2) << a << "," << b;
      EXPECT_LT(ratio, 0.1 * 2) << a << "," << b;
      if (a <= 1.0) EXPECT_LT(ratio, 2 * ds.w[100] / ds.w[10]) << a << "," << b;
    }
}

TEST(PosteriorSecondMoment, MatchesSampler) {
  const auto h = MixingDistribution::beta(2, 3);
  const BaseMeasure base = BaseMeasure::standard_normal();
  const auto data = Dataset::distinct({-1.4, -0.6, -0.1, 0.3, 0.8, 2.0});
  const BaseMeasure ind = base.with_transform(Indicator{-0.5, 0.5});
  const auto exact = posterior_second_moment(h, ind, data);
  const PosteriorSampler sampler(h, base, data, 1e-10);
  const auto masses = sampler.sample_set_masses(-0.5, 0.5, 100000, 8);
  EXPECT_TRUE(within_se(mean_se(masses), exact.mean));
  EXPECT_TRUE(within_se(variance_se(masses), exact.variance));
}

TEST(TieDoubleton, WeightsSumToOne) {
  for (const auto& h : {MixingDistribution::beta(0.5, 1), MixingDistribution::beta(2, 3),
                        MixingDistribution::beta(3, 0.5)})
    for (std::size_t n : {2u, 3u, 6u, 25u}) {
      auto xs = normal_points(n - 1, n);
      xs.push_back(xs[0]);
      const auto t = tie_doubleton(h, BaseMeasure::standard_normal(), Dataset::doubleton(xs));
      EXPECT_NEAR(t.outside + t.double_point + (n - 2.0) * t.single_point, 1.0, 1e-9);
    }
}

TEST(TieDoubleton, DirichletIgnoresTies) {
  const double b = 3.0;
  const std::size_t n = 5;
  const auto t = tie_doubleton(MixingDistribution::beta(1, b), BaseMeasure::standard_normal(),
                               Dataset::doubleton({0.1, 0.5, 0.1, -1.0, 2.0}));
  EXPECT_NEAR(t.outside, b / (b + n), 1e-10);
  EXPECT_NEAR(t.double_point, 2 / (b + n), 1e-10);
  EXPECT_NEAR(t.single_point, 1 / (b + n), 1e-10);
}

TEST(TieDoubleton, SmallStickMeanGivesLessPriorWeight) {
  const auto h = MixingDistribution::beta(0.5, 1);
  const auto t = tie_doubleton(h, BaseMeasure::standard_normal(),
                               Dataset::doubleton({0.1, 0.5, 0.1, -1.0, 2.0}));
  EXPECT_LT(t.outside, delta_sequence(h, 5).w[5]);
  EXPECT_THROW(tie_doubleton(h, BaseMeasure::standard_normal(), Dataset::distinct({1, 2})),
               UnsupportedConfiguration);
}

TEST(ProbDistinct, MonteCarlo) {
  const auto h = MixingDistribution::beta(2, 2);
  const BaseMeasure base = BaseMeasure::standard_normal();
  const std::size_t n = 3;
  std::vector<double> hits;
  for (std::uint64_t s = 0; s < 100000; ++s) {
    const auto r = sample_sticks(h, 1e-12, s);
    Engine eng = make_engine(s, Stream::indexes);
    std::discrete_distribution<std::size_t> pick(r.weights.begin(), r.weights.end());
    std::vector<std::size_t> seen;
    for (std::size_t k = 0; k < n; ++k) seen.push_back(pick(eng));
    std::sort(seen.begin(), seen.end());
    hits.push_back(std::adjacent_find(seen.begin(), seen.end()) == seen.end() ? 1.0 : 0.0);
  }
  EXPECT_TRUE(within_se(mean_se(hits), prob_distinct(h, n)));
}

TEST(WeightAsymptotics, DirichletAndExactCase) {
  std::vector<double> grid;
  for (double n = 10; n <= 1e5; n *= 10) grid.push_back(n);
  const auto d = weight_asymptotics(1, 2.5, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(d.w[k], 2.5 / (2.5 + grid[k]), 1e-14);
  const auto e = weight_asymptotics(2, 1, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double n = grid[k];
    EXPECT_NEAR(e.u[k], 4 / ((n + 2) * (n + 3)), 1e-12 * e.u[k]);
  }
  EXPECT_NEAR(e.reference_constant, 4.0, 1e-14);
  EXPECT_NEAR(e.constant, 4.0, 1e-2);
}

TEST(WeightAsymptotics, SlopeOverThreeDecades) {
  std::vector<double> grid;
  for (int k = 0; k <= 30; ++k) grid.push_back(std::round(1e3 * std::pow(10.0, k / 10.0)));
  for (double a : {0.5, 1.0, 2.0}) EXPECT_NEAR(weight_asymptotics(a, 1.5, grid).slope, -a, 0.02);
}

TEST(WeightAsymptotics, StrictlyDecreasing) {
  const auto h = MixingDistribution::beta(2, 3);
  const auto ds = delta_sequence(h, 1000);
  for (std::size_t n = 1; n < 1000; ++n) ASSERT_LT(ds.w[n + 1], ds.w[n]) << n;
  EXPECT_LT(ds.w[1000], 1e-4);
}

TEST(PosteriorIndexes, OrderedWithMinimalStart) {
  const auto h = MixingDistribution::beta(1, 1);
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto j = sample_posterior_indexes(h, 3, s);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_GE(j[0], 1u);
    EXPECT_LT(j[0], j[1]);
    EXPECT_LT(j[1], j[2]);
  }
}

TEST(PosteriorIndexes, SingleIndexIsGeometricHalf) {
  const auto h = MixingDistribution::beta(1, 1);
  std::vector<std::size_t> js;
  for (std::uint64_t s = 0; s < 100000; ++s) js.push_back(sample_posterior_indexes(h, 1, s)[0]);
  const double tv = testing::total_variation(js, [](std::size_t j) { return std::ldexp(1.0, -static_cast<int>(j)); }, 40);
  EXPECT_LT(tv, 0.01);
}

TEST(PosteriorSampler, PinsEveryDataPoint) {
  const auto h = MixingDistribution::beta(2, 3);
  const auto data = Dataset::distinct({-1.0, 0.0, 2.5, 3.0});
  const PosteriorSampler sampler(h, BaseMeasure::standard_normal(), data, 1e-12);
  for (std::size_t k = 0; k < 200; ++k) {
    const auto d = sampler.draw(5, k);
    std::vector<int> owned(data.size(), 0);
    for (std::size_t j = 0; j < d.pinned.size(); ++j) {
      if (d.pinned[j] < 0) continue;
      ++owned[d.pinned[j]];
      EXPECT_EQ(d.realization.atoms[j], data.points()[d.pinned[j]]);
      EXPECT_NE(std::find(d.ordered_indexes.begin(), d.ordered_indexes.end(), j + 1),
                d.ordered_indexes.end());
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      EXPECT_EQ(owned[i], 1);
      EXPECT_GT(d.data_weight(i), 0.0);
    }
    EXPECT_NEAR(d.realization.total_mass(), 1.0, 1e-13);
    EXPECT_LT(d.realization.remainder, 1e-12);
  }
}

TEST(PosteriorSampler, MeanMatchesFormula) {
  const auto h = MixingDistribution::beta(2, 3);
  const BaseMeasure base = BaseMeasure::standard_normal();
  const auto data = Dataset::distinct({-0.9, -0.2, 0.4, 1.1, 1.3, 2.2});
  const PosteriorSampler sampler(h, base, data, 1e-10);
  const auto masses = sampler.sample_set_masses(0.0, 1.2, 100000, 3);
  const auto m = posterior_mean(h, base.with_transform(Indicator{0.0, 1.2}), data);
  EXPECT_TRUE(within_se(mean_se(masses), m.value));
}

TEST(PosteriorSampler, DirichletPointMassIsBeta) {
  const double b = 2.0;
  const auto data = Dataset::distinct({-1.0, -0.5, 0.2, 0.9, 1.4});
  const PosteriorSampler sampler(MixingDistribution::beta(1, b), BaseMeasure::standard_normal(),
                                 data, 1e-10);
  const auto ws = sampler.sample_data_weights(0, 50000, 12);
  const double n = 5;
  const auto ks = testing::ks_one_sample(ws, [&](double x) { return testing::beta_cdf(x, 1.0, b + n - 1); });
  EXPECT_GT(ks.p_value, 0.01) << ks.statistic;
}

TEST(PosteriorSampler, CsvExportAnnotatesPins) {
  const auto d = sample_posterior_process(MixingDistribution::beta(1, 1), BaseMeasure::standard_normal(),
                                          Dataset::distinct({0.5, 1.5}), 1e-6, 3);
  std::ostringstream os;
  write_csv(os, d);
  EXPECT_NE(os.str().find("weight,atom,pinned\n"), std::string::npos);
  EXPECT_NE(os.str().find(",0.5,"), std::string::npos);
}

}  // namespace
}  // namespace gdp
