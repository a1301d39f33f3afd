// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "gdp/base_measure.hpp"
#include "gdp/mixing.hpp"
#include "gdp/parallel.hpp"
#include "gdp/stickprior.hpp"

namespace gdp {

/// Observed points with their multiplicity structure. Ties are exact
/// floating-point equality.
class Dataset {
 public:
  enum class Profile { all_distinct, doubleton_tie };

  static Dataset distinct(std::vector<double> points);
  //! Exactly one pair of equal points, all others distinct.
  static Dataset doubleton(std::vector<double> points);
  //! Accepts either profile; any other pattern is UnsupportedConfiguration.
  static Dataset classify(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  std::span<const double> points() const { return points_; }
  Profile profile() const { return profile_; }
  //! Positions of the tied pair (doubleton only).
  std::pair<std::size_t, std::size_t> tie() const { return tie_; }

 private:
  Dataset(std::vector<double> points, Profile profile, std::pair<std::size_t, std::size_t> tie)
      : points_(std::move(points)), profile_(profile), tie_(tie) {}

  std::vector<double> points_;
  Profile profile_;
  std::pair<std::size_t, std::size_t> tie_{0, 0};
};

/// Posterior constants after n distinct observations, as ratios to a_n.
struct PosteriorRatios {
  double nb;       // n b_n / a_n = 1 - w_n
  double c;        // c_n / a_n = w_n
  double nd;       // n d_n / a_n
  double nn1g;     // n(n-1) g_n / a_n
  double e;        // e_n / a_n
  double f;        // f_n / a_n
  double h;        // h_n / a_n (0 for n < 2)
  double i;        // i_n / a_n (0 for n < 2)
  double b_next;   // b_{n+1} / a_n
  double c_next;   // c_{n+1} / a_n
  double a_next2;  // a_{n+2} / a_n
};

struct PosteriorConstants {
  std::size_t n;
  double w;
  double log_a;
  PosteriorRatios ratios;
};

PosteriorConstants constants(const MixingDistribution& mixing, std::size_t n);

//! Raw constants a..i from the unnormalized recursions, indexes 0..n_max
//! (a, b, c up to n_max + 2). Entries a recursion does not define are 0.
//! Intended as an independent oracle for small n.
struct RawConstants {
  std::vector<double> a, b, c, d, e, f, g, h, i;
};

RawConstants raw_constants(const MixingDistribution& mixing, std::size_t n_max);

//! a_n = Pr(the first n draws are distinct), via log space.
double prob_distinct(const MixingDistribution& mixing, std::size_t n);
double log_prob_distinct(const MixingDistribution& mixing, std::size_t n);

//! Posterior mean measure w_n P0 + (1 - w_n)/n sum_i delta(x_i).
struct PosteriorMeasure {
  double w;
  double atom_weight;
  std::vector<double> atoms;
};

PosteriorMeasure posterior_measure(const MixingDistribution& mixing, const Dataset& data);

struct PosteriorMean {
  double w;
  double prior_mean;
  double data_mean;
  double value;
};

//! E(theta | data) for theta = ∫ g dP with g the base measure's transform.
PosteriorMean posterior_mean(const MixingDistribution& mixing, const BaseMeasure& base,
                             const Dataset& data);

struct PosteriorSecondMoment {
  double mean;
  double second_moment;
  double variance;
};

PosteriorSecondMoment posterior_second_moment(const MixingDistribution& mixing,
                                              const BaseMeasure& base, const Dataset& data);

//! Posterior mean measure for a doubleton tie: outside * P0, plus
//! double_point at the tied value and single_point at each other point.
struct TieWeights {
  double outside;
  double double_point;
  double single_point;
  double mean;  // E(∫ g dP | data)
};

TieWeights tie_doubleton(const MixingDistribution& mixing, const BaseMeasure& base,
                         const Dataset& data);

//! u_n = (n+1) M_{1,n} and w_n = u_n / (1 - M_{0,n+1}) for Beta(a, b).
double beta_u(double a, double b, double n);
double beta_w(double a, double b, double n);

struct WeightAsymptotics {
  std::vector<double> n;
  std::vector<double> u;
  std::vector<double> w;
  double slope;              // least squares of log u on log n
  double constant;           // mean of n^a u_n over the top decade
  double reference_constant; // a Γ(a+b) / Γ(b)
};

WeightAsymptotics weight_asymptotics(double a, double b, std::span<const double> n_grid);

//! J_(1) < ... < J_(n), 1-based, from independent geometric gaps with
//! success probabilities 1 - M_{0,n}, ..., 1 - M_{0,1}.
std::vector<std::size_t> sample_posterior_indexes(const MixingDistribution& mixing,
                                                  std::size_t n, Engine& eng);
std::vector<std::size_t> sample_posterior_indexes(const MixingDistribution& mixing,
                                                  std::size_t n, std::uint64_t seed);

struct PosteriorDraw {
  std::vector<std::size_t> ordered_indexes;
  //! pinned[j] = data position owning atom j (0-based), or -1.
  std::vector<std::ptrdiff_t> pinned;
  StickRealization realization;

  //! Weight of the atom pinned to data point `i`.
  double data_weight(std::size_t i) const;
};

/// Draws from the posterior of P given distinct data.
///
/// Tilted laws for every (success, failure) pair are prepared once, so one
/// sampler serves many draws.
class PosteriorSampler {
 public:
  PosteriorSampler(MixingDistribution mixing, BaseMeasure base, Dataset data,
                   double epsilon = kDefaultEpsilon, std::size_t cap = kDefaultStickCap);

  PosteriorDraw draw(Engine& indexes, Engine& weights, Engine& atoms) const;
  //! Draw `index` of the family rooted at `seed`.
  PosteriorDraw draw(std::uint64_t seed, std::size_t index = 0) const;

  //! P(A | one draw) for A = [lo, hi), `count` draws.
  std::vector<double> sample_set_masses(double lo, double hi, std::size_t count,
                                        std::uint64_t seed,
                                        Execution exec = Execution::parallel) const;
  std::vector<double> sample_data_weights(std::size_t i, std::size_t count, std::uint64_t seed,
                                          Execution exec = Execution::parallel) const;

  const Dataset& data() const { return data_; }

 private:
  const MixingDistribution& tilted(unsigned success, unsigned failure) const;

  MixingDistribution mixing_;
  BaseMeasure base_;
  Dataset data_;
  double epsilon_;
  std::size_t cap_;
  std::vector<MixingDistribution> tilts_;  // [success * (n + 1) + failure]
};

PosteriorDraw sample_posterior_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                       const Dataset& data, double epsilon, std::uint64_t seed);

//! `weight,atom,pinned` rows; pinned is the data position or -1.
void write_csv(std::ostream& os, const PosteriorDraw& draw);

}  // namespace gdp
