// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <thread>

#include "gdp/errors.hpp"
#include "gdp/numerics.hpp"

namespace gdp::numerics {
namespace {

TEST(LogRising, MatchesLogGammaDifference) {
  for (double x : {0.3, 1.0, 2.5, 17.0})
    for (double k : {0.0, 1.0, 5.0, 40.0, 300.0, 2.5})
      EXPECT_NEAR(log_rising(x, k), std::lgamma(x + k) - std::lgamma(x),
                  1e-11 * std::max(1.0, std::abs(std::lgamma(x + k))))
          << x << " " << k;
}

TEST(LogRisingRatio, ShortAndLongPathsAgree) {
  // Direct product for small k.
  double direct = 0.0;
  for (int m = 0; m < 7; ++m) direct += std::log((2.0 + m) / (5.0 + m));
  EXPECT_NEAR(log_rising_ratio(2.0, 5.0, 7), direct, 1e-14);
  // Across the switch to the gamma ratio the value moves smoothly.
  const double below = log_rising_ratio(1.5, 4.0, 4096);
  const double above = log_rising_ratio(1.5, 4.0, 4097);
  EXPECT_NEAR(above - below, std::log((1.5 + 4096) / (4.0 + 4096)), 1e-10);
  // 1^{[n]} / 3^{[n]} = 2 / ((n+1)(n+2)).
  for (unsigned n : {10u, 5000u, 1000000u})
    EXPECT_NEAR(std::exp(log_rising_ratio(1.0, 3.0, n)), 2.0 / ((n + 1.0) * (n + 2.0)),
                1e-12 * 2.0 / ((n + 1.0) * (n + 2.0)));
}

TEST(Binomial, SmallValuesAreExact) {
  EXPECT_EQ(binomial(4, 2), 6.0);
  EXPECT_EQ(binomial(12, 5), 792.0);
  EXPECT_EQ(binomial(7, 0), 1.0);
  EXPECT_EQ(binomial(60, 30), 118264581564861424.0);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (std::size_t m : {1u, 2u, 5u, 15u, 40u}) {
    const auto& rule = gauss_legendre(m);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    const unsigned deg = static_cast<unsigned>(2 * m - 1);
    const auto f = [deg](double x) { return std::pow(x, deg - deg % 2); };
    const double exact = 2.0 / (deg - deg % 2 + 1.0);
    EXPECT_NEAR(gauss_integrate(f, -1.0, 1.0, m), exact, 1e-13) << m;
  }
}

TEST(GaussLegendre, ConcurrentFirstUseIsSafe) {
  std::vector<std::thread> ts;
  std::vector<double> sums(8, 0.0);
  for (int t = 0; t < 8; ++t)
    ts.emplace_back([t, &sums] {
      const auto& r = gauss_legendre(33 + t % 2);
      for (double w : r.weights) sums[t] += w;
    });
  for (auto& t : ts) t.join();
  for (double s : sums) EXPECT_NEAR(s, 2.0, 1e-13);
}

TEST(AdaptiveIntegrate, HandlesEndpointSingularity) {
  const std::function<double(double)> f = [](double x) { return 1.0 / std::sqrt(x); };
  const auto bp = dyadic_breakpoints(0.0, 1.0, 30);
  EXPECT_NEAR(adaptive_integrate(f, bp, 1e-10), 2.0, 1e-8);
}

TEST(AdaptiveIntegrate, SmoothIntegrandToTolerance) {
  const std::function<double(double)> f = [](double x) { return std::exp(-x * x); };
  const std::vector<double> bp{-6.0, 0.0, 6.0};
  EXPECT_NEAR(adaptive_integrate(f, bp, 1e-13), std::sqrt(M_PI) * std::erf(6.0), 1e-13);
}

TEST(AdaptiveIntegrate, ReportsFailureWithAchievedError) {
  const std::function<double(double)> f = [](double x) { return x == 0.0 ? 0.0 : std::sin(1.0 / x) / x; };
  const std::vector<double> bp{0.0, 1.0};
  try {
    adaptive_integrate(f, bp, 1e-14);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_GT(e.achieved(), 1e-14);
  }
}

TEST(DyadicBreakpoints, RefinesTowardTheLowerEnd) {
  const auto bp = dyadic_breakpoints(0.0, 1.0, 3);
  ASSERT_EQ(bp.size(), 5u);
  EXPECT_EQ(bp.front(), 0.0);
  EXPECT_EQ(bp[1], 0.125);
  EXPECT_EQ(bp.back(), 1.0);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  const std::vector<double> xs{1.0, 1e-16, -1.0, 1e-16};
  EXPECT_DOUBLE_EQ(compensated_sum(xs), 2e-16);
}

TEST(NormalCdf, KnownValues) {
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(normal_cdf(-8.0), 6.22096057427178e-16, 1e-28);
}

}  // namespace
}  // namespace gdp::numerics
