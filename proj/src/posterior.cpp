// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
#include "gdp/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "gdp/errors.hpp"
#include "gdp/io.hpp"
#include "gdp/numerics.hpp"

namespace gdp {

// ---------------------------------------------------------------- Dataset

Dataset Dataset::classify(std::vector<double> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return points[l] < points[r]; });
  std::vector<std::pair<std::size_t, std::size_t>> ties;
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (std::isnan(points[order[k]])) throw ConfigError("data contains NaN");
    if (points[order[k]] == points[order[k - 1]]) ties.emplace_back(order[k - 1], order[k]);
  }
  if (ties.empty()) return Dataset(std::move(points), Profile::all_distinct, {0, 0});
  if (ties.size() == 1) {
    auto [i, j] = ties.front();
    return Dataset(std::move(points), Profile::doubleton_tie, {std::min(i, j), std::max(i, j)});
  }
  throw UnsupportedConfiguration(
      "only all-distinct data or a single doubleton tie are supported");
}

Dataset Dataset::distinct(std::vector<double> points) {
  Dataset d = classify(std::move(points));
  if (d.profile() != Profile::all_distinct)
    throw UnsupportedConfiguration("data contain a tie; use the doubleton path");
  return d;
}

Dataset Dataset::doubleton(std::vector<double> points) {
  Dataset d = classify(std::move(points));
  if (d.profile() != Profile::doubleton_tie)
    throw UnsupportedConfiguration("data do not contain exactly one doubleton tie");
  return d;
}

// --------------------------------------------------------------- constants

namespace {

void require_distinct(const Dataset& data) {
  if (data.profile() != Dataset::Profile::all_distinct)
    throw UnsupportedConfiguration(
        "posterior formulas for distinct data were given tied data; use tie_doubleton");
}

void require_atom_free(const BaseMeasure& base) {
  if (!base.atom_free())
    throw UnsupportedConfiguration("posterior formulas need an atom-free base measure");
}

}  // namespace

PosteriorConstants constants(const MixingDistribution& mixing, std::size_t n) {
  if (n == 0) throw ConfigError("posterior constants need n >= 1");
  if (mixing.is_point_mass())
    throw DomainError("posterior constants are undefined when H is a point mass at 1");
  const DeltaSequence ds = delta_sequence(mixing, n + 1);
  const auto& dl = ds.delta;
  const auto& w = ds.w;
  for (std::size_t j = 0; j <= n + 1; ++j)
    if (!(dl[j] > 0.0))
      throw NumericalError("delta sequence underflowed at index " + std::to_string(j), 0.0);
  const auto r2 = [&](std::size_t k) {
    return mixing.product_moment(2, static_cast<unsigned>(k)) /
           mixing.one_minus_bbar_moment(static_cast<unsigned>(k + 2));
  };

  // Ratio sequences, each of the form X_m = q_m X_{m-1} + s_m with
  // q_m = c_m (delta_{m+1} / delta_{m-1}).
  double D = 0.0, G = 0.0, E = 0.0, F = 0.0, Hh = 0.0, I = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    const double md = static_cast<double>(m);
    const double step = dl[m + 1] / dl[m - 1];
    D = step * D + ds.eps[m - 1] / dl[m - 1];
    G = m >= 2 ? step * G + ds.eta[m - 1] / dl[m - 1] : 0.0;
    E = 3.0 * r2(m) + 3.0 * dl[m + 1] * (1.0 - w[m]) / md + (md - 1.0) / md * step * E;
    F = 3.0 * dl[m + 1] * w[m] + (md - 1.0) / md * step * F;
    if (m >= 2) {
      Hh = r2(m) + 2.0 * dl[m + 1] * (1.0 - w[m]) / md + (md - 2.0) / md * step * Hh;
      I = 4.0 * dl[m + 1] * w[m] + (md - 2.0) / md * step * I;
    }
  }

  PosteriorConstants out{};
  out.n = n;
  out.w = w[n];
  double log_a = 0.0;
  for (std::size_t j = 1; j < n; ++j) log_a += std::log(w[j]);
  out.log_a = log_a;
  const double nd = static_cast<double>(n);
  auto& r = out.ratios;
  r.nb = 1.0 - w[n];
  r.c = w[n];
  r.nd = D;
  r.nn1g = G;
  r.e = E;
  r.f = F;
  r.h = Hh;
  r.i = I;
  r.b_next = dl[n] * (1.0 - w[n + 1]);
  r.c_next = (nd + 2.0) * (nd + 1.0) * dl[n + 1] * dl[n];
  r.a_next2 = r.c_next;
  return out;
}

RawConstants raw_constants(const MixingDistribution& mixing, std::size_t n_max) {
  const auto M = [&](std::size_t i, std::size_t j) {
    return mixing.product_moment(static_cast<unsigned>(i), static_cast<unsigned>(j));
  };
  const auto den = [&](std::size_t k) {
    return mixing.one_minus_bbar_moment(static_cast<unsigned>(k));
  };
  RawConstants rc;
  const std::size_t top = n_max + 2;
  for (auto* v : {&rc.a, &rc.b, &rc.c, &rc.d, &rc.e, &rc.f, &rc.g, &rc.h, &rc.i})
    v->assign(top + 1, 0.0);
  rc.a[0] = 1.0;
  for (std::size_t n = 1; n <= top; ++n) rc.a[n] = n * M(1, n - 1) * rc.a[n - 1] / den(n);
  for (std::size_t n = 1; n <= n_max + 1; ++n) {
    const double dn = static_cast<double>(n);
    rc.b[n] = (M(2, n - 1) * rc.a[n - 1] + (dn - 1) * M(1, n) * rc.b[n - 1]) / den(n + 1);
    rc.c[n] = (2 * M(1, n) * rc.a[n] + (dn - 1) * M(1, n) * rc.c[n - 1]) / den(n + 1);
  }
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double q = den(n + 2);
    rc.d[n] = (M(3, n - 1) * rc.a[n - 1] + (dn - 1) * M(1, n + 1) * rc.d[n - 1]) / q;
    rc.e[n] = (3 * M(2, n) * rc.a[n] + 3 * M(1, n + 1) * rc.b[n] +
               (dn - 1) * M(1, n + 1) * rc.e[n - 1]) / q;
    rc.f[n] = (3 * M(1, n + 1) * rc.c[n] + (dn - 1) * M(1, n + 1) * rc.f[n - 1]) / q;
    if (n >= 2) {
      rc.g[n] = (2 * M(2, n) * rc.b[n - 1] + (dn - 2) * M(1, n + 1) * rc.g[n - 1]) / q;
      rc.h[n] = (M(2, n) * rc.c[n - 1] + 2 * M(1, n + 1) * rc.b[n] +
                 (dn - 2) * M(1, n + 1) * rc.h[n - 1]) / q;
      rc.i[n] = (4 * M(1, n + 1) * rc.c[n] + (dn - 2) * M(1, n + 1) * rc.i[n - 1]) / q;
    }
  }
  return rc;
}

double log_prob_distinct(const MixingDistribution& mixing, std::size_t n) {
  if (n <= 1) return 0.0;
  const DeltaSequence ds = delta_sequence(mixing, n - 1);
  double acc = 0.0;
  for (std::size_t j = 1; j < n; ++j) acc += std::log(ds.w[j]);
  return acc;
}

double prob_distinct(const MixingDistribution& mixing, std::size_t n) {
  return std::exp(log_prob_distinct(mixing, n));
}

// ------------------------------------------------------- posterior moments

namespace {

double weight_after(const MixingDistribution& mixing, std::size_t n) {
  if (n == 0) return 1.0;
  return delta_sequence(mixing, n).w[n];
}

}  // namespace

PosteriorMeasure posterior_measure(const MixingDistribution& mixing, const Dataset& data) {
  require_distinct(data);
  const std::size_t n = data.size();
  const double w = weight_after(mixing, n);
  return {w, n == 0 ? 0.0 : (1.0 - w) / static_cast<double>(n),
          std::vector<double>(data.points().begin(), data.points().end())};
}

PosteriorMean posterior_mean(const MixingDistribution& mixing, const BaseMeasure& base,
                             const Dataset& data) {
  require_distinct(data);
  require_atom_free(base);
  const std::size_t n = data.size();
  PosteriorMean out{};
  out.w = weight_after(mixing, n);
  out.prior_mean = base.mean_y();
  double acc = 0.0;
  for (double x : data.points()) acc += base.g(x);
  out.data_mean = n == 0 ? 0.0 : acc / static_cast<double>(n);
  out.value = out.w * out.prior_mean + (1.0 - out.w) * out.data_mean;
  return out;
}

PosteriorSecondMoment posterior_second_moment(const MixingDistribution& mixing,
                                              const BaseMeasure& base, const Dataset& data) {
  require_distinct(data);
  require_atom_free(base);
  const std::size_t n = data.size();
  const double theta0 = base.mean_y();
  const double g2_prior = base.moment_oracle(2, 0.0);
  PosteriorSecondMoment out{};
  if (n == 0) {
    out.mean = theta0;
    out.variance = mixing.product_moment(2, 0) / mixing.one_minus_bbar_moment(2) *
                   base.central_y_moment(2);
    out.second_moment = out.variance + theta0 * theta0;
    return out;
  }
  const double nd = static_cast<double>(n);
  double s1 = 0.0, s2 = 0.0;
  for (double x : data.points()) {
    const double y = base.g(x);
    s1 += y;
    s2 += y * y;
  }
  const double theta_n = s1 / nd;
  const double g2_data = s2 / nd;
  const PosteriorConstants pc = constants(mixing, n);
  const auto& r = pc.ratios;
  const double n2g = n > 1 ? r.nn1g * nd / (nd - 1.0) : 0.0;
  const double ng = n > 1 ? r.nn1g / (nd - 1.0) : 0.0;
  out.mean = pc.w * theta0 + (1.0 - pc.w) * theta_n;
  out.second_moment = n2g * theta_n * theta_n + 2.0 * nd * r.b_next * theta_n * theta0 +
                      r.a_next2 * theta0 * theta0 + r.b_next * g2_prior +
                      (r.nd - ng) * g2_data;
  double var = out.second_moment - out.mean * out.mean;
  const double scale = std::max(1.0, out.second_moment);
  if (var < -1e-9 * scale)
    throw NumericalError("posterior variance is negative: " + io::format_double(var), var);
  out.variance = std::max(var, 0.0);
  return out;
}

TieWeights tie_doubleton(const MixingDistribution& mixing, const BaseMeasure& base,
                         const Dataset& data) {
  if (data.profile() != Dataset::Profile::doubleton_tie)
    throw UnsupportedConfiguration("tie_doubleton needs data with exactly one doubleton tie");
  require_atom_free(base);
  const std::size_t n = data.size();
  const std::size_t m = n - 1;
  const double dm = static_cast<double>(m);
  const PosteriorConstants pc = constants(mixing, m);
  const DeltaSequence ds = delta_sequence(mixing, n);
  const double w_m = ds.w[m];
  TieWeights out{};
  out.outside = dm * ds.delta[m] * (1.0 - ds.w[n]) / (1.0 - w_m);
  out.double_point = pc.ratios.nd / (1.0 - w_m);
  out.single_point = m >= 2 ? pc.ratios.nn1g / ((dm - 1.0) * (1.0 - w_m)) : 0.0;
  const auto [ti, tj] = data.tie();
  double others = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (k != ti && k != tj) others += base.g(data.points()[k]);
  out.mean = out.outside * base.mean_y() + out.double_point * base.g(data.points()[ti]) +
             out.single_point * others;
  return out;
}

// ------------------------------------------------------------- asymptotics

double beta_u(double a, double b, double n) {
  if (!(a > 0.0 && b > 0.0)) throw ConfigError("Beta parameters must be positive");
  // (n+1) a Γ(a+b) Γ(b+n) / (Γ(b) Γ(a+b+n+1))
  const double log_u = std::log(n + 1.0) + std::log(a) +
                       std::log(boost::math::tgamma_delta_ratio(b + n, a + 1.0)) -
                       std::log(boost::math::tgamma_delta_ratio(b, a));
  return std::exp(log_u);
}

double beta_w(double a, double b, double n) {
  const auto k = static_cast<unsigned>(n + 1.0);
  return beta_u(a, b, n) / -std::expm1(numerics::log_rising_ratio(b, a + b, k));
}

WeightAsymptotics weight_asymptotics(double a, double b, std::span<const double> n_grid) {
  if (n_grid.size() < 2) throw ConfigError("weight asymptotics need at least two n values");
  WeightAsymptotics out;
  out.reference_constant = a / boost::math::tgamma_delta_ratio(b, a);
  for (double n : n_grid) {
    if (!(n >= 1.0) || std::floor(n) != n) throw ConfigError("n grid must hold integers >= 1");
    out.n.push_back(n);
    out.u.push_back(beta_u(a, b, n));
    out.w.push_back(beta_w(a, b, n));
  }
  const auto [lo_it, hi_it] = std::minmax_element(out.n.begin(), out.n.end());
  if (*hi_it < 100.0 * *lo_it) throw ConfigError("n grid must span at least two decades");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(out.n.size());
  for (std::size_t j = 0; j < out.n.size(); ++j) {
    const double x = std::log(out.n[j]), y = std::log(out.u[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  double acc = 0.0;
  std::size_t cnt = 0;
  for (std::size_t j = 0; j < out.n.size(); ++j) {
    if (out.n[j] >= *hi_it / 10.0) {
      acc += std::pow(out.n[j], a) * out.u[j];
      ++cnt;
    }
  }
  out.constant = acc / static_cast<double>(cnt);
  return out;
}

// ----------------------------------------------------------------- sampler

std::vector<std::size_t> sample_posterior_indexes(const MixingDistribution& mixing,
                                                  std::size_t n, Engine& eng) {
  if (n == 0) throw ConfigError("posterior indexes need n >= 1");
  std::vector<std::size_t> idx;
  idx.reserve(n);
  std::size_t pos = 0;
  for (std::size_t k = n; k >= 1; --k) {
    const double p = mixing.one_minus_bbar_moment(static_cast<unsigned>(k));
    std::size_t gap = 1;
    if (p < 1.0) gap += std::geometric_distribution<std::size_t>(p)(eng);
    pos += gap;
    idx.push_back(pos);
  }
  return idx;
}

std::vector<std::size_t> sample_posterior_indexes(const MixingDistribution& mixing,
                                                  std::size_t n, std::uint64_t seed) {
  Engine eng = make_engine(seed, Stream::indexes);
  return sample_posterior_indexes(mixing, n, eng);
}

double PosteriorDraw::data_weight(std::size_t i) const {
  for (std::size_t j = 0; j < pinned.size(); ++j)
    if (pinned[j] == static_cast<std::ptrdiff_t>(i)) return realization.weights[j];
  throw std::out_of_range("no atom pinned to data point " + std::to_string(i));
}

PosteriorSampler::PosteriorSampler(MixingDistribution mixing, BaseMeasure base, Dataset data,
                                   double epsilon, std::size_t cap)
    : mixing_(std::move(mixing)),
      base_(std::move(base)),
      data_(std::move(data)),
      epsilon_(epsilon),
      cap_(cap) {
  require_distinct(data_);
  if (data_.size() == 0) throw ConfigError("posterior sampler needs at least one data point");
  if (!(epsilon_ > 0.0 && epsilon_ < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
  const std::size_t n = data_.size();
  tilts_.reserve(2 * (n + 1));
  for (unsigned s = 0; s <= 1; ++s)
    for (unsigned f = 0; f <= n; ++f) tilts_.push_back(update_mixing(mixing_, s, f));
}

const MixingDistribution& PosteriorSampler::tilted(unsigned success, unsigned failure) const {
  return tilts_[success * (data_.size() + 1) + failure];
}

PosteriorDraw PosteriorSampler::draw(Engine& indexes, Engine& weights, Engine& atoms) const {
  const std::size_t n = data_.size();
  PosteriorDraw out;
  out.ordered_indexes = sample_posterior_indexes(mixing_, n, indexes);
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  std::shuffle(owner.begin(), owner.end(), indexes);

  const std::size_t last = out.ordered_indexes.back();
  const std::size_t limit = std::max(cap_, last);
  StickRealization& r = out.realization;
  std::size_t next = 0;  // position in ordered_indexes of the next index >= k
  for (std::size_t k = 1;; ++k) {
    if (k > last && r.remainder < epsilon_) break;
    if (k > limit) {
      r.cap_reached = true;
      break;
    }
    double b;
    std::ptrdiff_t pin = -1;
    if (k <= last) {
      const bool hit = out.ordered_indexes[next] == k;
      const auto at_risk = static_cast<unsigned>(n - next);
      b = tilted(hit ? 1 : 0, at_risk - (hit ? 1 : 0)).sample(weights);
      if (hit) pin = static_cast<std::ptrdiff_t>(owner[next++]);
    } else {
      b = mixing_.sample(weights);
    }
    r.fractions.push_back(b);
    r.weights.push_back(b * r.remainder);
    r.remainder *= 1.0 - b;
    out.pinned.push_back(pin);
    ++r.truncation_level;
  }
  r.atoms.resize(r.weights.size());
  for (std::size_t j = 0; j < r.atoms.size(); ++j)
    r.atoms[j] = out.pinned[j] >= 0 ? data_.points()[static_cast<std::size_t>(out.pinned[j])]
                                    : base_.sample_atom(atoms);
  return out;
}

PosteriorDraw PosteriorSampler::draw(std::uint64_t seed, std::size_t index) const {
  Engine ix = make_engine(seed, Stream::indexes, index);
  Engine w = make_engine(seed, Stream::weights, index);
  Engine a = make_engine(seed, Stream::atoms, index);
  return draw(ix, w, a);
}

std::vector<double> PosteriorSampler::sample_set_masses(double lo, double hi, std::size_t count,
                                                        std::uint64_t seed,
                                                        Execution exec) const {
  return tabulate<double>(
      count, [&](std::size_t i) { return draw(seed, i).realization.mass(lo, hi); }, exec);
}

std::vector<double> PosteriorSampler::sample_data_weights(std::size_t i, std::size_t count,
                                                          std::uint64_t seed,
                                                          Execution exec) const {
  if (i >= data_.size()) throw ConfigError("data index out of range");
  return tabulate<double>(
      count, [&](std::size_t k) { return draw(seed, k).data_weight(i); }, exec);
}

PosteriorDraw sample_posterior_process(const MixingDistribution& mixing, const BaseMeasure& base,
                                       const Dataset& data, double epsilon, std::uint64_t seed) {
  return PosteriorSampler(mixing, base, data, epsilon).draw(seed);
}

void write_csv(std::ostream& os, const PosteriorDraw& draw) {
  const auto& r = draw.realization;
  os << "# remainder=" << io::format_double(r.remainder) << '\n';
  os << "# truncation_level=" << r.truncation_level << '\n';
  if (r.cap_reached) os << "# cap_reached=true\n";
  os << "weight,atom,pinned\n";
  for (std::size_t j = 0; j < r.weights.size(); ++j)
    os << io::format_double(r.weights[j]) << ',' << io::format_double(r.atoms[j]) << ','
       << draw.pinned[j] << '\n';
}

}  // namespace gdp
