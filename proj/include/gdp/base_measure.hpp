// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "gdp/random.hpp"

namespace gdp {

struct Normal {
  double mean = 0.0;
  double sd = 1.0;
};
struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};
//! Mass 1-p1 at x0, p1 at x1.
struct TwoPoint {
  double x0 = 0.0;
  double x1 = 1.0;
  double p1 = 0.5;
};
struct Cauchy {
  double location = 0.0;
  double scale = 1.0;
};
//! Characteristic function exp(-(scale |u|)^alpha).
struct SymmetricStable {
  double alpha = 2.0;
  double scale = 1.0;
};

using BaseDistribution = std::variant<Normal, Uniform, TwoPoint, Cauchy, SymmetricStable>;

struct Identity {};
//! Indicator of A = [lo, hi).
struct Indicator {
  double lo;
  double hi;
};
//! Piecewise-linear g through (nodes, values), constant beyond the end nodes.
struct TabulatedFunction {
  std::vector<double> nodes;
  std::vector<double> values;
};

using Transform = std::variant<Identity, Indicator, TabulatedFunction>;

double apply(const Transform& g, double x);

/// Base measure P0 together with the transform g defining Y = g(xi).
///
/// The central moment oracle E0 (Y - x)^k is exact for the identity and
/// indicator transforms, and uses quadrature over P0 for tabulated ones.
/// Moments are refused (HeavyTailError) when Y is unbounded and P0 has no
/// finite variance.
class BaseMeasure {
 public:
  explicit BaseMeasure(BaseDistribution dist, Transform g = Identity{});

  static BaseMeasure standard_normal() { return BaseMeasure(Normal{}); }

  const BaseDistribution& distribution() const { return dist_; }
  const Transform& transform() const { return g_; }
  BaseMeasure with_transform(Transform g) const { return BaseMeasure(dist_, std::move(g)); }

  double sample_atom(Engine& eng) const;
  double g(double x) const { return apply(g_, x); }
  double sample_y(Engine& eng) const { return g(sample_atom(eng)); }

  bool atom_free() const;
  bool has_finite_moments() const;

  double cdf(double x) const;
  //! P0([lo, hi)).
  double probability(double lo, double hi) const;

  //! theta0 = E0 Y.
  double mean_y() const;
  //! E0 (Y - theta0)^k.
  double central_y_moment(unsigned k) const;
  //! E0 (Y - x)^k.
  double moment_oracle(unsigned k, double x) const;

  std::string describe() const;

 private:
  double density(double x) const;
  double tabulated_expectation(unsigned k, double x) const;
  void require_moments() const;

  BaseDistribution dist_;
  Transform g_;
};

}  // namespace gdp
