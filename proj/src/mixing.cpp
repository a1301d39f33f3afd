// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "gdp/errors.hpp"
#include "gdp/numerics.hpp"
#include "gdp/parallel.hpp"

namespace gdp {

struct MixingDistribution::Cache {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, double> values;
};

namespace {

constexpr int kDyadicLevels = 20;
constexpr std::uint64_t kComplementTag = 1ULL << 63;

std::uint64_t moment_key(unsigned i, unsigned j) {
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

void check_grid(const std::vector<double>& nodes, const std::vector<double>& dens) {
  if (nodes.size() < 2 || nodes.size() != dens.size())
    throw ConfigError("grid mixing law needs >= 2 nodes and one density per node");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!std::isfinite(nodes[k]) || nodes[k] < 0.0 || nodes[k] > 1.0)
      throw ConfigError("grid mixing nodes must lie in [0,1]");
    if (k > 0 && !(nodes[k] > nodes[k - 1]))
      throw ConfigError("grid mixing nodes must be strictly increasing");
    if (!std::isfinite(dens[k]) || dens[k] < 0.0)
      throw ConfigError("grid mixing densities must be finite and nonnegative");
  }
}

double grid_mass(const std::vector<double>& nodes, const std::vector<double>& dens) {
  std::vector<double> parts(nodes.size() - 1);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k)
    parts[k] = 0.5 * (dens[k] + dens[k + 1]) * (nodes[k + 1] - nodes[k]);
  return numerics::compensated_sum(parts);
}

// ∫ f(s) h(s) ds with h the linear interpolant, m-point Gauss per panel.
template <class T>
T grid_integrate(const GridLaw& g, const std::function<T(double)>& f, std::size_t m) {
  const auto& rule = numerics::gauss_legendre(m);
  const std::size_t panels = g.nodes.size() - 1;
  auto partial = tabulate<T>(panels, [&](std::size_t k) {
    const double lo = g.nodes[k], hi = g.nodes[k + 1];
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    const double f0 = g.densities[k], f1 = g.densities[k + 1];
    T acc{};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = mid + half * rule.nodes[q];
      const double dens = f0 + (f1 - f0) * (s - lo) / (hi - lo);
      acc += rule.weights[q] * dens * f(s);
    }
    return acc * half;
  });
  T total{};
  for (const T& v : partial) total += v;
  return total;
}

template <class T>
T beta_expect(const BetaLaw& law, const std::function<T(double)>& f, double tol) {
  const double a = law.a, b = law.b;
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  T left{}, right{};
  if (a < 1.0) {
    // s = t^{1/a} absorbs the s^{a-1} singularity.
    const double top = std::pow(0.5, a);
    const auto bp = numerics::dyadic_breakpoints(0.0, top, kDyadicLevels);
    left = numerics::adaptive_integrate(
        std::function<T(double)>([&](double t) {
          const double s = std::pow(t, 1.0 / a);
          return f(s) * (std::exp((b - 1.0) * std::log1p(-s) - log_beta) / a);
        }),
        bp, 0.5 * tol);
  } else {
    const auto bp = numerics::dyadic_breakpoints(0.0, 0.5, kDyadicLevels);
    left = numerics::adaptive_integrate(
        std::function<T(double)>([&](double s) {
          return f(s) *
                 std::exp((a - 1.0) * std::log(s) + (b - 1.0) * std::log1p(-s) - log_beta);
        }),
        bp, 0.5 * tol);
  }
  if (b < 1.0) {
    const double top = std::pow(0.5, b);
    const auto bp = numerics::dyadic_breakpoints(0.0, top, kDyadicLevels);
    right = numerics::adaptive_integrate(
        std::function<T(double)>([&](double t) {
          const double s = 1.0 - std::pow(t, 1.0 / b);
          return f(s) * (std::exp((a - 1.0) * std::log(s) - log_beta) / b);
        }),
        bp, 0.5 * tol);
  } else {
    // t = 1 - s, refined toward s = 1.
    const auto bp = numerics::dyadic_breakpoints(0.0, 0.5, kDyadicLevels);
    right = numerics::adaptive_integrate(
        std::function<T(double)>([&](double t) {
          const double s = 1.0 - t;
          return f(s) *
                 std::exp((a - 1.0) * std::log(s) + (b - 1.0) * std::log(t) - log_beta);
        }),
        bp, 0.5 * tol);
  }
  return left + right;
}

}  // namespace

MixingDistribution::MixingDistribution(Law law)
    : law_(std::move(law)), cache_(std::make_shared<Cache>()) {}

MixingDistribution MixingDistribution::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw ConfigError("Beta mixing law needs a, b > 0");
  return MixingDistribution(BetaLaw{a, b});
}

MixingDistribution MixingDistribution::grid(std::vector<double> nodes,
                                            std::vector<double> densities) {
  check_grid(nodes, densities);
  const double mass = grid_mass(nodes, densities);
  if (!(mass > 0.0)) throw ConfigError("grid mixing density has zero mass");
  for (double& d : densities) d /= mass;
  MixingDistribution out(GridLaw{std::move(nodes), std::move(densities)});
  const GridLaw& g = std::get<GridLaw>(out.law_);
  auto cdf = std::make_shared<std::vector<double>>(g.nodes.size(), 0.0);
  for (std::size_t k = 0; k + 1 < g.nodes.size(); ++k)
    (*cdf)[k + 1] = (*cdf)[k] + 0.5 * (g.densities[k] + g.densities[k + 1]) *
                                    (g.nodes[k + 1] - g.nodes[k]);
  out.grid_cdf_ = std::move(cdf);
  return out;
}

MixingDistribution MixingDistribution::point_mass_at_one() {
  return MixingDistribution(PointMassAtOne{});
}

MixingDistribution MixingDistribution::with_max_order(unsigned order) const {
  MixingDistribution out = *this;
  out.max_order_ = order;
  return out;
}

double MixingDistribution::product_moment(unsigned i, unsigned j) const {
  if (i + j > max_order_)
    throw DomainError("product moment order " + std::to_string(i + j) +
                      " exceeds configured maximum " + std::to_string(max_order_));
  if (i == 0 && j == 0) return 1.0;
  const auto key = moment_key(i, j);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  double value = 0.0;
  if (const auto* beta = as_beta()) {
    const double ab = beta->a + beta->b;
    value = std::exp(numerics::log_rising_ratio(beta->a, ab, i) +
                     numerics::log_rising_ratio(beta->b, ab + i, j));
  } else if (const auto* g = as_grid()) {
    const std::size_t m = std::min<std::size_t>((i + j + 3) / 2, 64);
    value = grid_integrate<double>(
        *g,
        [i, j](double s) {
          return std::pow(s, static_cast<double>(i)) *
                 std::pow(1.0 - s, static_cast<double>(j));
        },
        m);
  } else {
    value = j == 0 ? 1.0 : 0.0;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

double MixingDistribution::one_minus_bbar_moment(unsigned k) const {
  if (k == 0) return 0.0;
  if (k > max_order_)
    throw DomainError("product moment order " + std::to_string(k) +
                      " exceeds configured maximum " + std::to_string(max_order_));
  const auto key = kComplementTag | k;
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  double value = 0.0;
  if (const auto* beta = as_beta()) {
    value = -std::expm1(numerics::log_rising_ratio(beta->b, beta->a + beta->b, k));
  } else if (const auto* g = as_grid()) {
    const double m0k = product_moment(0, k);
    if (m0k <= 0.999) {
      value = 1.0 - m0k;
    } else {
      const std::size_t m = std::min<std::size_t>((k + 3) / 2, 64);
      value = grid_integrate<double>(
          *g, [k](double s) { return -std::expm1(k * std::log1p(-s)); }, m);
    }
  } else {
    value = 1.0;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

double MixingDistribution::expect(const std::function<double(double)>& f,
                                  double tol) const {
  if (const auto* beta = as_beta()) return beta_expect<double>(*beta, f, tol);
  if (const auto* g = as_grid()) return grid_integrate<double>(*g, f, 8);
  return f(1.0);
}

std::complex<double> MixingDistribution::expect_complex(
    const std::function<std::complex<double>(double)>& f, double tol) const {
  if (const auto* beta = as_beta()) return beta_expect<std::complex<double>>(*beta, f, tol);
  if (const auto* g = as_grid()) return grid_integrate<std::complex<double>>(*g, f, 8);
  return f(1.0);
}

double MixingDistribution::sample(Engine& eng) const {
  if (const auto* beta = as_beta()) return sample_beta(beta->a, beta->b, eng);
  if (const auto* g = as_grid()) {
    const auto& cdf = *grid_cdf_;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(eng) * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t k = static_cast<std::size_t>(std::distance(cdf.begin(), it));
    k = std::clamp<std::size_t>(k, 1, cdf.size() - 1) - 1;
    const double h = g->nodes[k + 1] - g->nodes[k];
    const double f0 = g->densities[k], f1 = g->densities[k + 1];
    const double r = u - cdf[k];
    // Mass f0 t + (f1 - f0) t^2 / (2h) = r, rationalized root.
    const double disc = std::max(0.0, f0 * f0 + 2.0 * (f1 - f0) * r / h);
    const double denom = f0 + std::sqrt(disc);
    const double t = denom > 0.0 ? 2.0 * r / denom : 0.0;
    return g->nodes[k] + std::clamp(t, 0.0, h);
  }
  return 1.0;
}

std::string MixingDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* beta = as_beta())
    os << "Beta(" << beta->a << ", " << beta->b << ")";
  else if (const auto* g = as_grid())
    os << "Grid(" << g->nodes.size() << " nodes)";
  else
    os << "PointMassAtOne";
  return os.str();
}

DeltaSequence delta_sequence(const MixingDistribution& mixing, std::size_t n_max) {
  DeltaSequence seq;
  seq.delta.resize(n_max + 1);
  seq.eps.resize(n_max + 1);
  seq.eta.resize(n_max + 1);
  seq.w.resize(n_max + 1);
  for (std::size_t j = 0; j <= n_max; ++j) {
    const auto uj = static_cast<unsigned>(j);
    seq.delta[j] = mixing.product_moment(1, uj) / mixing.one_minus_bbar_moment(uj + 1);
    seq.w[j] = static_cast<double>(j + 1) * seq.delta[j];
    const double tail3 = mixing.one_minus_bbar_moment(uj + 3);
    seq.eps[j] = mixing.product_moment(3, uj) / tail3;
    seq.eta[j] = 2.0 * mixing.product_moment(2, uj + 1) * (1.0 - seq.w[j]) / tail3;
  }
  // M_{1,0} / (1 - M_{0,1}) is identically 1; pin it against rounding.
  seq.delta[0] = 1.0;
  seq.w[0] = 1.0;
  return seq;
}

MixingDistribution update_mixing(const MixingDistribution& mixing,
                                 unsigned success_count, unsigned failure_count) {
  if (success_count == 0 && failure_count == 0) return mixing;
  if (const auto* beta = mixing.as_beta())
    return MixingDistribution::beta(beta->a + success_count, beta->b + failure_count)
        .with_max_order(mixing.max_order());
  if (const auto* g = mixing.as_grid()) {
    std::vector<double> dens(g->densities.size());
    for (std::size_t k = 0; k < dens.size(); ++k) {
      const double s = g->nodes[k];
      dens[k] = g->densities[k] * std::pow(s, static_cast<double>(success_count)) *
                std::pow(1.0 - s, static_cast<double>(failure_count));
    }
    if (grid_mass(g->nodes, dens) <= 0.0)
      throw DomainError("tilt annihilates all grid mass");
    return MixingDistribution::grid(g->nodes, std::move(dens))
        .with_max_order(mixing.max_order());
  }
  if (failure_count > 0)
    throw DomainError("tilt (1-s)^k annihilates the point mass at 1");
  return mixing;
}

}  // namespace gdp
