// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte Carlo comparison helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

namespace gdp::testing {

struct Estimate {
  double value;
  double se;
};

//! Sample mean with its standard error.
inline Estimate mean_se(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

//! Mean of f(x) with its standard error.
inline Estimate functional_se(std::span<const double> xs, const std::function<double(double)>& f) {
  std::vector<double> ys(xs.size());
  std::transform(xs.begin(), xs.end(), ys.begin(), f);
  return mean_se(ys);
}

//! Sample variance; SE from sqrt((m4 - s^4) / N).
inline Estimate variance_se(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m) * (x - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= n;
  m4 /= n;
  return {m2 * n / (n - 1.0), std::sqrt(std::max(m4 - m2 * m2, 0.0) / n)};
}

//! Mean of a correlated series with batch-means standard error.
inline Estimate batch_mean_se(std::span<const double> xs, std::size_t batches = 50) {
  const std::size_t len = xs.size() / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b)
    means[b] = std::accumulate(xs.begin() + b * len, xs.begin() + (b + 1) * len, 0.0) / len;
  const Estimate e = mean_se(means);
  return {std::accumulate(xs.begin(), xs.begin() + batches * len, 0.0) / (batches * len), e.se};
}

inline bool within_se(const Estimate& e, double target, double k = 3.0) {
  return std::abs(e.value - target) <= k * e.se;
}

//! Kolmogorov tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double acc = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    acc += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(acc, 0.0, 1.0);
}

struct KsResult {
  double statistic;
  double p_value;
};

inline double ks_p_value(double d, double ne) {
  const double root = std::sqrt(ne);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

inline KsResult ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return {d, ks_p_value(d, n)};
}

inline KsResult ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double n = static_cast<double>(xs.size()), m = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double t = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] <= t) ++i;
    while (j < ys.size() && ys[j] <= t) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return {d, ks_p_value(d, n * m / (n + m))};
}

inline double correlation(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

//! Total variation between empirical counts on 1..K (plus overflow) and a pmf.
inline double total_variation(std::span<const std::size_t> values,
                              const std::function<double(std::size_t)>& pmf,
                              std::size_t support_max) {
  std::vector<double> freq(support_max + 2, 0.0);
  for (std::size_t v : values) freq[std::min(v, support_max + 1)] += 1.0;
  const double n = static_cast<double>(values.size());
  double tv = 0.0, covered = 0.0;
  for (std::size_t g = 1; g <= support_max; ++g) {
    const double p = pmf(g);
    covered += p;
    tv += std::abs(freq[g] / n - p);
  }
  tv += std::abs(freq[support_max + 1] / n - std::max(0.0, 1.0 - covered));
  return 0.5 * tv;
}

//! Standard normal CDF.
inline double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

//! Beta(a, b) CDF.
inline double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace gdp::testing
