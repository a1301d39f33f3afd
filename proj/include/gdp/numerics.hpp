// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gdp::numerics {

//! log(x^{[k]}) = log Γ(x+k) - log Γ(x), the log rising factorial.
//! Short integer k is summed term by term; otherwise Boost's gamma delta
//! ratio keeps the difference accurate for large x.
double log_rising(double x, double k);

//! log of x^{[k]} / y^{[k]} for integer k, accurate when the ratio is near 1.
double log_rising_ratio(double x, double y, unsigned k);

double log_binomial(unsigned n, unsigned k);
double binomial(unsigned n, unsigned k);

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

//! m-point Gauss–Legendre rule, cached per m; safe to call concurrently.
const GaussRule& gauss_legendre(std::size_t m);

//! Fixed-rule integral of f over [lo, hi].
double gauss_integrate(const std::function<double(double)>& f, double lo,
                       double hi, std::size_t m);

//! Adaptive composite Gauss–Legendre over the given breakpoints.
//!
//! Each panel is bisected until a 15-point estimate and the sum over its two
//! halves agree to the panel's share of `tol`. Throws NumericalError carrying
//! the achieved error estimate if the depth limit or panel budget is hit.
double adaptive_integrate(const std::function<double(double)>& f,
                          std::span<const double> breakpoints, double tol);

std::complex<double> adaptive_integrate(
    const std::function<std::complex<double>(double)>& f,
    std::span<const double> breakpoints, double tol);

//! Breakpoints lo, lo + w 2^-levels, ..., lo + w/2, hi refined toward `lo`.
std::vector<double> dyadic_breakpoints(double lo, double hi, int levels);

//! Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

//! Standard normal CDF.
double normal_cdf(double x);

}  // namespace gdp::numerics
