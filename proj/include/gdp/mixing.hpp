// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gdp/random.hpp"

namespace gdp {

struct BetaLaw {
  double a;
  double b;
};

//! Piecewise-linear density through (nodes[k], densities[k]), zero outside
//! [nodes.front(), nodes.back()]. Densities are normalized on construction.
struct GridLaw {
  std::vector<double> nodes;
  std::vector<double> densities;
};

//! B = 1 almost surely; one stick takes all the mass.
struct PointMassAtOne {};

/// Law H of the stick fractions B_j on (0,1).
///
/// Product moments M_{i,j} = E B^i (1-B)^j are the building block of every
/// closed form in the library. Beta laws use rising factorials in log space;
/// grid laws integrate exactly per panel. Values are memoized in a cache
/// shared between copies; the law itself never changes after construction,
/// so instances may be read from several threads at once.
class MixingDistribution {
 public:
  using Law = std::variant<BetaLaw, GridLaw, PointMassAtOne>;

  static constexpr unsigned kDefaultMaxOrder = 4096;

  static MixingDistribution beta(double a, double b);
  static MixingDistribution grid(std::vector<double> nodes,
                                 std::vector<double> densities);
  static MixingDistribution point_mass_at_one();

  const Law& law() const { return law_; }
  const BetaLaw* as_beta() const { return std::get_if<BetaLaw>(&law_); }
  const GridLaw* as_grid() const { return std::get_if<GridLaw>(&law_); }
  bool is_point_mass() const {
    return std::holds_alternative<PointMassAtOne>(law_);
  }

  unsigned max_order() const { return max_order_; }
  MixingDistribution with_max_order(unsigned order) const;

  //! M_{i,j} = ∫ s^i (1-s)^j dH(s).
  double product_moment(unsigned i, unsigned j) const;

  //! 1 - M_{0,k}, computed without cancellation when M_{0,k} is near 1.
  double one_minus_bbar_moment(unsigned k) const;

  double mean() const { return product_moment(1, 0); }

  //! ∫ f dH by adaptive quadrature (Beta) or panel quadrature (grid).
  double expect(const std::function<double(double)>& f, double tol = 1e-10) const;
  std::complex<double> expect_complex(const std::function<std::complex<double>(double)>& f,
                                      double tol = 1e-10) const;

  double sample(Engine& eng) const;

  std::string describe() const;

 private:
  struct Cache;

  explicit MixingDistribution(Law law);

  Law law_;
  unsigned max_order_ = kDefaultMaxOrder;
  std::shared_ptr<Cache> cache_;
  std::shared_ptr<const std::vector<double>> grid_cdf_;
};

/// Derived sequences over indexes 0..nMax.
///
/// delta[j] = M_{1,j} / (1 - M_{0,j+1});  w[n] = (n+1) delta[n];
/// eps[j]   = M_{3,j} / (1 - M_{0,j+3});
/// eta[j]   = 2 M_{2,j+1} (1 - w[j]) / (1 - M_{0,j+3}).
struct DeltaSequence {
  std::vector<double> delta;
  std::vector<double> eps;
  std::vector<double> eta;
  std::vector<double> w;
};

DeltaSequence delta_sequence(const MixingDistribution& mixing, std::size_t n_max);

//! Law proportional to s^success (1-s)^failure dH(s).
MixingDistribution update_mixing(const MixingDistribution& mixing,
                                 unsigned success_count, unsigned failure_count);

}  // namespace gdp
