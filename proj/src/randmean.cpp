// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/randmean.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "gdp/errors.hpp"
#include "gdp/numerics.hpp"

namespace gdp {

double w_moment(const MixingDistribution& mixing, unsigned p) {
  std::vector<double> m(p + 1, 0.0);
  m[0] = 1.0;
  for (unsigned q = 1; q <= p; ++q) {
    double acc = 0.0;
    for (unsigned j = 0; j < q; ++j)
      acc += numerics::binomial(q, j) * mixing.product_moment(2 * (q - j), 2 * j) * m[j];
    m[q] = acc / mixing.one_minus_bbar_moment(2 * q);
  }
  return m[p];
}

double power_sum(const StickRealization& r, double alpha) {
  std::vector<double> terms;
  terms.reserve(r.weights.size() + 1);
  for (double g : r.weights) terms.push_back(std::pow(g, alpha));
  terms.push_back(std::pow(r.remainder, alpha));
  return numerics::compensated_sum(terms);
}

std::vector<double> sample_scale_mixture(const MixingDistribution& mixing,
                                         const ScaleMixture& mixture, std::size_t count,
                                         std::uint64_t seed, Execution exec) {
  const double alpha = mixture.alpha;
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ConfigError("alpha must lie in (0,2]");
  if (mixture.normal_convention && alpha != 2.0)
    throw ConfigError("the normal convention needs alpha = 2");
  const double threshold = std::min(mixture.epsilon, std::pow(mixture.epsilon, 1.0 / alpha));
  const std::uint64_t noise_root = derive_seed(seed, Stream::noise);
  return replicate<double>(
      count, seed, Stream::weights,
      [&](Engine& w, std::size_t i) {
        const StickRealization r = sample_sticks(mixing, threshold, w, mixture.cap);
        Engine z(derive_seed(noise_root, Stream::noise, i));
        if (mixture.normal_convention)
          return std::sqrt(power_sum(r, 2.0)) * std::normal_distribution<double>()(z);
        return std::pow(power_sum(r, alpha), 1.0 / alpha) * sample_symmetric_stable(alpha, z);
      },
      exec);
}

CharacteristicFunction empirical_cf(std::span<const double> samples, double u_max,
                                    std::size_t nodes, Execution exec) {
  if (samples.empty()) throw ConfigError("empirical cf needs samples");
  if (!(u_max > 0.0) || nodes < 2) throw ConfigError("empirical cf needs u_max > 0, nodes >= 2");
  const double nn = static_cast<double>(nodes);
  auto x = std::make_shared<std::vector<double>>(nodes);
  auto bw = std::make_shared<std::vector<double>>(nodes);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double angle = std::numbers::pi * (static_cast<double>(k) + 0.5) / nn;
    (*x)[k] = 0.5 * u_max * (1.0 + std::cos(angle));
    (*bw)[k] = (k % 2 ? -1.0 : 1.0) * std::sin(angle);
  }
  const double inv = 1.0 / static_cast<double>(samples.size());
  auto values = std::make_shared<std::vector<std::complex<double>>>(tabulate<std::complex<double>>(
      nodes,
      [&](std::size_t k) {
        double re = 0.0, im = 0.0;
        for (double t : samples) {
          re += std::cos((*x)[k] * t);
          im += std::sin((*x)[k] * t);
        }
        return std::complex<double>(re * inv, im * inv);
      },
      exec));
  return [x, bw, values, u_max](double u) {
    const bool negative = u < 0.0;
    const double a = std::abs(u);
    if (a > u_max * (1.0 + 1e-12)) throw DomainError("empirical cf evaluated beyond u_max");
    std::complex<double> num{};
    double den = 0.0;
    for (std::size_t k = 0; k < x->size(); ++k) {
      const double d = a - (*x)[k];
      if (d == 0.0) {
        num = (*values)[k];
        den = 1.0;
        break;
      }
      const double c = (*bw)[k] / d;
      num += c * (*values)[k];
      den += c;
    }
    const std::complex<double> v = num / den;
    return negative ? std::conj(v) : v;
  };
}

CfResidual cf_identity_residual(const MixingDistribution& mixing,
                                const CharacteristicFunction& cf_base,
                                const CharacteristicFunction& cf_mean,
                                std::span<const double> u_grid, double tol) {
  CfResidual out;
  for (double u : u_grid) {
    const std::complex<double> rhs = mixing.expect_complex(
        [&](double s) { return cf_base(u * s) * cf_mean(u * (1.0 - s)); }, tol);
    const double res = std::abs(cf_mean(u) - rhs);
    out.u.push_back(u);
    out.residual.push_back(res);
    out.max_residual = std::max(out.max_residual, res);
  }
  return out;
}

}  // namespace gdp
