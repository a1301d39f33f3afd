// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/base_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gdp/errors.hpp"
#include "gdp/numerics.hpp"

namespace gdp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double double_factorial_odd(unsigned k) {  // (k-1)!! for even k
  double acc = 1.0;
  for (unsigned m = k - 1; m > 1; m -= 2) acc *= m;
  return acc;
}

void validate(const BaseDistribution& dist) {
  std::visit(overloaded{
                 [](const Normal& d) {
                   if (!(d.sd > 0.0)) throw ConfigError("normal base needs sd > 0");
                 },
                 [](const Uniform& d) {
                   if (!(d.hi > d.lo)) throw ConfigError("uniform base needs hi > lo");
                 },
                 [](const TwoPoint& d) {
                   if (!(d.p1 >= 0.0 && d.p1 <= 1.0))
                     throw ConfigError("two-point base needs p1 in [0,1]");
                 },
                 [](const Cauchy& d) {
                   if (!(d.scale > 0.0)) throw ConfigError("Cauchy base needs scale > 0");
                 },
                 [](const SymmetricStable& d) {
                   if (!(d.alpha > 0.0 && d.alpha <= 2.0))
                     throw ConfigError("stable base needs alpha in (0,2]");
                   if (!(d.scale > 0.0)) throw ConfigError("stable base needs scale > 0");
                 },
             },
             dist);
}

void validate(const Transform& g) {
  if (const auto* t = std::get_if<TabulatedFunction>(&g)) {
    if (t->nodes.size() < 2 || t->nodes.size() != t->values.size())
      throw ConfigError("tabulated transform needs >= 2 nodes and one value per node");
    for (std::size_t k = 1; k < t->nodes.size(); ++k)
      if (!(t->nodes[k] > t->nodes[k - 1]))
        throw ConfigError("tabulated transform nodes must be strictly increasing");
  }
  if (const auto* a = std::get_if<Indicator>(&g))
    if (!(a->hi >= a->lo)) throw ConfigError("indicator set needs hi >= lo");
}

}  // namespace

double apply(const Transform& g, double x) {
  return std::visit(
      overloaded{
          [x](const Identity&) { return x; },
          [x](const Indicator& a) { return (x >= a.lo && x < a.hi) ? 1.0 : 0.0; },
          [x](const TabulatedFunction& t) {
            if (x <= t.nodes.front()) return t.values.front();
            if (x >= t.nodes.back()) return t.values.back();
            const auto it = std::upper_bound(t.nodes.begin(), t.nodes.end(), x);
            const std::size_t k = static_cast<std::size_t>(it - t.nodes.begin()) - 1;
            const double frac = (x - t.nodes[k]) / (t.nodes[k + 1] - t.nodes[k]);
            return t.values[k] + frac * (t.values[k + 1] - t.values[k]);
          },
      },
      g);
}

BaseMeasure::BaseMeasure(BaseDistribution dist, Transform g)
    : dist_(std::move(dist)), g_(std::move(g)) {
  validate(dist_);
  validate(g_);
}

double BaseMeasure::sample_atom(Engine& eng) const {
  return std::visit(
      overloaded{
          [&](const Normal& d) { return std::normal_distribution<double>(d.mean, d.sd)(eng); },
          [&](const Uniform& d) {
            return std::uniform_real_distribution<double>(d.lo, d.hi)(eng);
          },
          [&](const TwoPoint& d) {
            return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < d.p1 ? d.x1 : d.x0;
          },
          [&](const Cauchy& d) { return d.location + d.scale * sample_symmetric_stable(1.0, eng); },
          [&](const SymmetricStable& d) {
            return d.scale * sample_symmetric_stable(d.alpha, eng);
          },
      },
      dist_);
}

bool BaseMeasure::atom_free() const { return !std::holds_alternative<TwoPoint>(dist_); }

bool BaseMeasure::has_finite_moments() const {
  if (!std::holds_alternative<Identity>(g_)) return true;
  if (std::holds_alternative<Cauchy>(dist_)) return false;
  if (const auto* s = std::get_if<SymmetricStable>(&dist_)) return s->alpha == 2.0;
  return true;
}

void BaseMeasure::require_moments() const {
  if (!has_finite_moments())
    throw HeavyTailError("base measure " + describe() +
                         " has no finite moments for the identity transform");
}

double BaseMeasure::cdf(double x) const {
  return std::visit(
      overloaded{
          [x](const Normal& d) { return numerics::normal_cdf((x - d.mean) / d.sd); },
          [x](const Uniform& d) { return std::clamp((x - d.lo) / (d.hi - d.lo), 0.0, 1.0); },
          [x](const TwoPoint& d) {
            return (x >= d.x0 ? 1.0 - d.p1 : 0.0) + (x >= d.x1 ? d.p1 : 0.0);
          },
          [x](const Cauchy& d) {
            return 0.5 + std::atan((x - d.location) / d.scale) / std::numbers::pi;
          },
          [x](const SymmetricStable& d) {
            if (d.alpha == 2.0)
              return numerics::normal_cdf(x / (d.scale * std::numbers::sqrt2));
            if (d.alpha == 1.0) return 0.5 + std::atan(x / d.scale) / std::numbers::pi;
            throw UnsupportedConfiguration(
                "stable base with alpha not in {1, 2} has no closed-form CDF");
          },
      },
      dist_);
}

double BaseMeasure::probability(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  if (const auto* d = std::get_if<TwoPoint>(&dist_)) {
    double p = 0.0;
    if (d->x0 >= lo && d->x0 < hi) p += 1.0 - d->p1;
    if (d->x1 >= lo && d->x1 < hi) p += d->p1;
    return p;
  }
  const double upper = std::isinf(hi) && hi > 0 ? 1.0 : cdf(hi);
  const double lower = std::isinf(lo) && lo < 0 ? 0.0 : cdf(lo);
  return upper - lower;
}

double BaseMeasure::density(double x) const {
  return std::visit(
      overloaded{
          [x](const Normal& d) {
            const double z = (x - d.mean) / d.sd;
            return std::exp(-0.5 * z * z) / (d.sd * std::sqrt(2.0 * std::numbers::pi));
          },
          [x](const Uniform& d) { return (x >= d.lo && x <= d.hi) ? 1.0 / (d.hi - d.lo) : 0.0; },
          [](const TwoPoint&) -> double {
            throw UnsupportedConfiguration("two-point base has no density");
          },
          [x](const Cauchy& d) {
            const double z = (x - d.location) / d.scale;
            return 1.0 / (std::numbers::pi * d.scale * (1.0 + z * z));
          },
          [x](const SymmetricStable& d) {
            if (d.alpha == 2.0) {
              const double sd = d.scale * std::numbers::sqrt2;
              return std::exp(-0.5 * x * x / (sd * sd)) / (sd * std::sqrt(2.0 * std::numbers::pi));
            }
            if (d.alpha == 1.0) {
              const double z = x / d.scale;
              return 1.0 / (std::numbers::pi * d.scale * (1.0 + z * z));
            }
            throw UnsupportedConfiguration(
                "stable base with alpha not in {1, 2} has no closed-form density");
          },
      },
      dist_);
}

// E0 (g(xi) - x)^k for a tabulated g.
double BaseMeasure::tabulated_expectation(unsigned k, double x) const {
  const auto& t = std::get<TabulatedFunction>(g_);
  const auto pw = [k](double v) { return std::pow(v, static_cast<double>(k)); };
  if (const auto* d = std::get_if<TwoPoint>(&dist_))
    return (1.0 - d->p1) * pw(apply(g_, d->x0) - x) + d->p1 * pw(apply(g_, d->x1) - x);
  const double lo = t.nodes.front(), hi = t.nodes.back();
  double acc = cdf(lo) * pw(t.values.front() - x) + (1.0 - cdf(hi)) * pw(t.values.back() - x);
  std::vector<double> bp(t.nodes.begin(), t.nodes.end());
  if (const auto* u = std::get_if<Uniform>(&dist_)) {
    bp.push_back(std::clamp(u->lo, lo, hi));
    bp.push_back(std::clamp(u->hi, lo, hi));
    std::sort(bp.begin(), bp.end());
  }
  acc += numerics::adaptive_integrate(
      std::function<double(double)>([&](double s) { return pw(apply(g_, s) - x) * density(s); }),
      bp, 1e-12);
  return acc;
}

double BaseMeasure::mean_y() const {
  require_moments();
  if (const auto* a = std::get_if<Indicator>(&g_)) return probability(a->lo, a->hi);
  if (std::holds_alternative<TabulatedFunction>(g_)) return tabulated_expectation(1, 0.0);
  return std::visit(overloaded{
                        [](const Normal& d) { return d.mean; },
                        [](const Uniform& d) { return 0.5 * (d.lo + d.hi); },
                        [](const TwoPoint& d) { return (1.0 - d.p1) * d.x0 + d.p1 * d.x1; },
                        [](const Cauchy&) { return std::numeric_limits<double>::quiet_NaN(); },
                        [](const SymmetricStable&) { return 0.0; },
                    },
                    dist_);
}

double BaseMeasure::central_y_moment(unsigned k) const {
  require_moments();
  if (k == 0) return 1.0;
  if (k == 1) return 0.0;
  if (std::holds_alternative<Indicator>(g_)) return moment_oracle(k, mean_y());
  if (std::holds_alternative<TabulatedFunction>(g_))
    return tabulated_expectation(k, mean_y());
  const bool even = k % 2 == 0;
  return std::visit(
      overloaded{
          [&](const Normal& d) {
            return even ? std::pow(d.sd, static_cast<double>(k)) * double_factorial_odd(k) : 0.0;
          },
          [&](const Uniform& d) {
            return even ? std::pow(0.5 * (d.hi - d.lo), static_cast<double>(k)) / (k + 1.0) : 0.0;
          },
          [&](const TwoPoint& d) {
            const double m = (1.0 - d.p1) * d.x0 + d.p1 * d.x1;
            return (1.0 - d.p1) * std::pow(d.x0 - m, static_cast<double>(k)) +
                   d.p1 * std::pow(d.x1 - m, static_cast<double>(k));
          },
          [&](const Cauchy&) { return std::numeric_limits<double>::quiet_NaN(); },
          [&](const SymmetricStable& d) {
            const double sd = d.scale * std::numbers::sqrt2;
            return even ? std::pow(sd, static_cast<double>(k)) * double_factorial_odd(k) : 0.0;
          },
      },
      dist_);
}

double BaseMeasure::moment_oracle(unsigned k, double x) const {
  require_moments();
  if (k == 0) return 1.0;
  if (const auto* a = std::get_if<Indicator>(&g_)) {
    const double p0 = probability(a->lo, a->hi);
    return p0 * std::pow(1.0 - x, static_cast<double>(k)) +
           (1.0 - p0) * std::pow(-x, static_cast<double>(k));
  }
  const double theta0 = mean_y();
  const double shift = theta0 - x;
  double acc = 0.0;
  for (unsigned m = 0; m <= k; ++m)
    acc += numerics::binomial(k, m) * central_y_moment(m) *
           std::pow(shift, static_cast<double>(k - m));
  return acc;
}

std::string BaseMeasure::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Normal& d) { os << "Normal(" << d.mean << ", " << d.sd << ")"; },
                 [&](const Uniform& d) { os << "Uniform(" << d.lo << ", " << d.hi << ")"; },
                 [&](const TwoPoint& d) {
                   os << "TwoPoint(" << d.x0 << ", " << d.x1 << ", p1=" << d.p1 << ")";
                 },
                 [&](const Cauchy& d) { os << "Cauchy(" << d.location << ", " << d.scale << ")"; },
                 [&](const SymmetricStable& d) {
                   os << "Stable(" << d.alpha << ", " << d.scale << ")";
                 },
             },
             dist_);
  std::visit(overloaded{
                 [&](const Identity&) {},
                 [&](const Indicator& a) { os << " g=1[" << a.lo << ", " << a.hi << ")"; },
                 [&](const TabulatedFunction& t) { os << " g=grid(" << t.nodes.size() << ")"; },
             },
             g_);
  return os.str();
}

}  // namespace gdp
