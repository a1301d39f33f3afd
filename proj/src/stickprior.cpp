// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/stickprior.hpp"

#include <algorithm>
#include <ostream>

#include "gdp/errors.hpp"
#include "gdp/io.hpp"
#include "gdp/numerics.hpp"

namespace gdp {

double StickRealization::total_mass() const {
  std::vector<double> terms(weights);
  terms.push_back(remainder);
  return numerics::compensated_sum(terms);
}

double StickRealization::random_mean(const BaseMeasure& base) const {
  if (atoms.size() != weights.size())
    throw std::logic_error("random_mean needs a realization with atoms");
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) acc += weights[j] * base.g(atoms[j]);
  return acc;
}

double StickRealization::mass(double lo, double hi) const {
  if (atoms.size() != weights.size())
    throw std::logic_error("mass needs a realization with atoms");
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j)
    if (atoms[j] >= lo && atoms[j] < hi) acc += weights[j];
  return acc;
}

StickRealization sample_sticks(const MixingDistribution& mixing, double epsilon,
                               Engine& weights, std::size_t cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
  if (cap == 0) throw ConfigError("stick cap must be positive");
  StickRealization r;
  while (r.remainder >= epsilon) {
    if (r.truncation_level == cap) {
      r.cap_reached = true;
      break;
    }
    const double b = mixing.sample(weights);
    r.fractions.push_back(b);
    r.weights.push_back(b * r.remainder);
    r.remainder *= 1.0 - b;
    ++r.truncation_level;
  }
  return r;
}

StickRealization sample_sticks(const MixingDistribution& mixing, double epsilon,
                               std::uint64_t seed, std::size_t cap) {
  Engine eng = make_engine(seed, Stream::weights);
  return sample_sticks(mixing, epsilon, eng, cap);
}

StickRealization sample_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                double epsilon, Engine& weights, Engine& atoms,
                                std::size_t cap) {
  StickRealization r = sample_sticks(mixing, epsilon, weights, cap);
  r.atoms.resize(r.weights.size());
  for (double& x : r.atoms) x = base.sample_atom(atoms);
  return r;
}

StickRealization sample_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                double epsilon, std::uint64_t seed, std::size_t cap) {
  Engine w = make_engine(seed, Stream::weights);
  Engine a = make_engine(seed, Stream::atoms);
  return sample_process(mixing, base, epsilon, w, a, cap);
}

std::vector<double> mean_chain(const MixingDistribution& mixing, const BaseMeasure& base,
                               std::size_t steps, std::size_t burn_in, std::uint64_t seed) {
  if (burn_in > steps) throw ConfigError("burn-in exceeds the number of chain steps");
  Engine w = make_engine(seed, Stream::weights);
  Engine a = make_engine(seed, Stream::atoms);
  std::vector<double> out;
  out.reserve(steps - burn_in);
  double theta = base.sample_y(a);
  for (std::size_t t = 1; t <= steps; ++t) {
    const double b = mixing.sample(w);
    const double y = base.sample_y(a);
    theta = b * y + (1.0 - b) * theta;
    if (t > burn_in) out.push_back(theta);
  }
  return out;
}

std::vector<double> sample_random_means(const MixingDistribution& mixing,
                                        const BaseMeasure& base, std::size_t count,
                                        std::uint64_t seed, double epsilon, Execution exec) {
  const std::uint64_t atom_root = derive_seed(seed, Stream::atoms);
  return replicate<double>(
      count, seed, Stream::weights,
      [&](Engine& w, std::size_t i) {
        Engine a(derive_seed(atom_root, Stream::atoms, i));
        return sample_process(mixing, base, epsilon, w, a).random_mean(base);
      },
      exec);
}

std::vector<double> sample_set_masses(const MixingDistribution& mixing, const BaseMeasure& base,
                                      double lo, double hi, std::size_t count,
                                      std::uint64_t seed, double epsilon, Execution exec) {
  const std::uint64_t atom_root = derive_seed(seed, Stream::atoms);
  return replicate<double>(
      count, seed, Stream::weights,
      [&](Engine& w, std::size_t i) {
        Engine a(derive_seed(atom_root, Stream::atoms, i));
        return sample_process(mixing, base, epsilon, w, a).mass(lo, hi);
      },
      exec);
}

void write_csv(std::ostream& os, const StickRealization& r) {
  os << "# remainder=" << io::format_double(r.remainder) << '\n';
  os << "# truncation_level=" << r.truncation_level << '\n';
  if (r.cap_reached) os << "# cap_reached=true\n";
  os << "weight,atom\n";
  for (std::size_t j = 0; j < r.weights.size(); ++j) {
    os << io::format_double(r.weights[j]) << ',';
    if (j < r.atoms.size()) os << io::format_double(r.atoms[j]);
    os << '\n';
  }
}

}  // namespace gdp
