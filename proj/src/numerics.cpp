// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "gdp/errors.hpp"

namespace gdp::numerics {

namespace {

constexpr unsigned kDirectSumLimit = 256;
constexpr int kMaxDepth = 48;
constexpr long kMaxPanels = 1L << 20;

bool is_small_integer(double k) {
  return k >= 0.0 && k <= kDirectSumLimit && std::floor(k) == k;
}

double legendre(std::size_t m, double x, double& derivative) {
  double p0 = 1.0, p1 = x;
  for (std::size_t k = 2; k <= m; ++k) {
    const double dk = static_cast<double>(k);
    const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
    p0 = p1;
    p1 = p2;
  }
  derivative = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

GaussRule compute_rule(std::size_t m) {
  GaussRule rule;
  if (m == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  rule.nodes.resize(m);
  rule.weights.resize(m);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dm + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(m, x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(m, x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[m - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  return rule;
}

template <class T>
T panel(const std::function<T(double)>& f, double lo, double hi) {
  const GaussRule& rule = gauss_legendre(15);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  T acc{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

template <class T>
T refine(const std::function<T(double)>& f, double lo, double hi, T whole,
         double tol, int depth, double& worst, long& budget) {
  const double mid = 0.5 * (lo + hi);
  const T left = panel(f, lo, mid);
  const T right = panel(f, mid, hi);
  const T halves = left + right;
  const double diff = std::abs(halves - whole);
  if (diff <= std::max(tol, 1e-15 * std::abs(halves))) return halves;
  if (depth >= kMaxDepth || mid <= lo || mid >= hi || --budget <= 0) {
    worst = std::max(worst, diff);
    return halves;
  }
  return refine(f, lo, mid, left, 0.5 * tol, depth + 1, worst, budget) +
         refine(f, mid, hi, right, 0.5 * tol, depth + 1, worst, budget);
}

template <class T>
T adaptive(const std::function<T(double)>& f, std::span<const double> bp,
           double tol) {
  if (bp.size() < 2) return T{};
  const double per_panel = tol / static_cast<double>(bp.size() - 1);
  double worst = 0.0;
  long budget = kMaxPanels;
  T total{};
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    if (!(bp[k + 1] > bp[k])) continue;
    const T whole = panel(f, bp[k], bp[k + 1]);
    total += refine(f, bp[k], bp[k + 1], whole, per_panel, 0, worst, budget);
  }
  if (worst > tol)
    throw NumericalError("adaptive quadrature did not converge", worst);
  return total;
}

}  // namespace

double log_rising(double x, double k) {
  if (k == 0.0) return 0.0;
  if (is_small_integer(k)) {
    double acc = 0.0;
    for (unsigned m = 0; m < static_cast<unsigned>(k); ++m) acc += std::log(x + m);
    return acc;
  }
  const double ratio = boost::math::tgamma_delta_ratio(x, k);
  if (std::isfinite(ratio) && ratio > 0.0) return -std::log(ratio);
  return std::lgamma(x + k) - std::lgamma(x);
}

double log_rising_ratio(double x, double y, unsigned k) {
  if (k <= 16 * kDirectSumLimit) {
    double acc = 0.0;
    for (unsigned m = 0; m < k; ++m) acc += std::log1p((x - y) / (y + m));
    return acc;
  }
  // x^{[k]} / y^{[k]} = [Γ(x+k)/Γ(x+k+d)] / [Γ(x)/Γ(x+d)] with d = y - x.
  const double d = y - x;
  const double num = boost::math::tgamma_delta_ratio(x + k, d);
  const double den = boost::math::tgamma_delta_ratio(x, d);
  if (std::isfinite(num) && std::isfinite(den) && num > 0.0 && den > 0.0)
    return std::log(num) - std::log(den);
  return log_rising(x, k) - log_rising(y, k);
}

double log_binomial(unsigned n, unsigned k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return n <= 60 ? std::round(c) : c;
}

const GaussRule& gauss_legendre(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<GaussRule>(compute_rule(m));
  return *slot;
}

double gauss_integrate(const std::function<double(double)>& f, double lo,
                       double hi, std::size_t m) {
  const GaussRule& rule = gauss_legendre(m);
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

double adaptive_integrate(const std::function<double(double)>& f,
                          std::span<const double> breakpoints, double tol) {
  return adaptive<double>(f, breakpoints, tol);
}

std::complex<double> adaptive_integrate(
    const std::function<std::complex<double>(double)>& f,
    std::span<const double> breakpoints, double tol) {
  return adaptive<std::complex<double>>(f, breakpoints, tol);
}

std::vector<double> dyadic_breakpoints(double lo, double hi, int levels) {
  std::vector<double> bp{lo};
  const double width = hi - lo;
  for (int k = levels; k >= 1; --k) bp.push_back(lo + std::ldexp(width, -k));
  bp.push_back(hi);
  return bp;
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace gdp::numerics
