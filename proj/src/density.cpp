// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gdp/errors.hpp"
#include "gdp/io.hpp"
#include "gdp/posterior.hpp"

namespace gdp {

namespace {

void validate(const GridFunction& f, const char* name) {
  if (f.nodes.size() < 2 || f.nodes.size() != f.values.size())
    throw ConfigError(std::string(name) + " grid needs >= 2 nodes and one value per node");
  for (std::size_t k = 0; k < f.nodes.size(); ++k) {
    if (k > 0 && !(f.nodes[k] > f.nodes[k - 1]))
      throw ConfigError(std::string(name) + " grid nodes must be strictly increasing");
    if (!(f.values[k] >= 0.0) || !std::isfinite(f.values[k]))
      throw ConfigError(std::string(name) + " grid values must be finite and nonnegative");
  }
  const double deficit = 1.0 - f.mass();
  if (std::abs(deficit) > kGridMassTolerance)
    throw DomainError(std::string(name) + " grid mass deficiency " + io::format_double(deficit) +
                      " exceeds " + io::format_double(kGridMassTolerance));
}

}  // namespace

double GridFunction::operator()(double x) const {
  if (nodes.empty() || x < nodes.front() || x > nodes.back()) return 0.0;
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  if (it == nodes.end()) return values.back();
  const std::size_t k = static_cast<std::size_t>(it - nodes.begin()) - 1;
  const double frac = (x - nodes[k]) / (nodes[k + 1] - nodes[k]);
  return values[k] + frac * (values[k + 1] - values[k]);
}

double GridFunction::mass() const {
  double acc = 0.0;
  for (std::size_t k = 1; k < nodes.size(); ++k)
    acc += 0.5 * (values[k] + values[k - 1]) * (nodes[k] - nodes[k - 1]);
  return acc;
}

GridFunction tabulate_function(const std::function<double(double)>& f, double lo, double hi,
                               std::size_t count) {
  if (count < 2 || !(hi > lo)) throw ConfigError("tabulation needs count >= 2 and hi > lo");
  GridFunction g;
  g.nodes.resize(count);
  g.values.resize(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) {
    g.nodes[k] = k + 1 == count ? hi : lo + h * static_cast<double>(k);
    g.values[k] = f(g.nodes[k]);
  }
  return g;
}

DensityEstimate density_estimate(std::span<const double> data, const GridFunction& prior,
                                 const GridFunction& p0, const MixingDistribution& mixing,
                                 std::span<const double> t_grid, Execution exec) {
  validate(prior, "prior");
  validate(p0, "error density");
  const Dataset ds = Dataset::distinct(std::vector<double>(data.begin(), data.end()));
  const std::size_t n = data.size();

  const std::size_t m = prior.nodes.size();
  const auto log_post = tabulate<double>(
      m,
      [&](std::size_t k) {
        const double theta = prior.nodes[k];
        double acc = std::log(prior.values[k]);
        for (double y : data) acc += std::log(p0(y - theta));
        return acc;
      },
      exec);
  const double peak = *std::max_element(log_post.begin(), log_post.end());
  if (!std::isfinite(peak))
    throw DomainError("location posterior vanishes on the whole prior grid");

  DensityEstimate out;
  out.posterior.nodes = prior.nodes;
  out.posterior.values.resize(m);
  for (std::size_t k = 0; k < m; ++k) out.posterior.values[k] = std::exp(log_post[k] - peak);
  const double z = out.posterior.mass();
  for (double& v : out.posterior.values) v /= z;

  double mean = 0.0, second = 0.0;
  for (std::size_t k = 1; k < m; ++k) {
    const double h = prior.nodes[k] - prior.nodes[k - 1];
    const double a = prior.nodes[k - 1], b = prior.nodes[k];
    const double fa = out.posterior.values[k - 1], fb = out.posterior.values[k];
    mean += 0.5 * h * (fa * a + fb * b);
    second += 0.5 * h * (fa * a * a + fb * b * b);
  }
  out.posterior_mean = mean;
  out.posterior_sd = std::sqrt(std::max(second - mean * mean, 0.0));

  out.w = n == 0 ? 1.0 : delta_sequence(mixing, n).w[n];
  out.t.assign(t_grid.begin(), t_grid.end());
  const double w = out.w;
  out.density = tabulate<double>(
      out.t.size(),
      [&](std::size_t k) {
        const double t = out.t[k];
        double kern = 0.0;
        for (double y : data) kern += out.posterior(y - t);
        return w * p0(t) + (n == 0 ? 0.0 : (1.0 - w) * kern / static_cast<double>(n));
      },
      exec);
  return out;
}

}  // namespace gdp
