// Copyright 2026 The gdp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP fan-out for the replicate kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "gdp/density.hpp"
#include "gdp/posterior.hpp"
#include "gdp/randmean.hpp"
#include "gdp/stickprior.hpp"

namespace {

gdp::Execution mode(const benchmark::State& state) {
  return state.range(1) == 0 ? gdp::Execution::serial : gdp::Execution::parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RandomMeans(benchmark::State& state) {
  const auto h = gdp::MixingDistribution::beta(2.0, 3.0);
  const auto base = gdp::BaseMeasure::standard_normal();
  for (auto _ : state)
    benchmark::DoNotOptimize(gdp::sample_random_means(
        h, base, static_cast<std::size_t>(state.range(0)), 7, 1e-10, mode(state)));
  label(state);
}

void BM_ScaleMixture(benchmark::State& state) {
  const auto h = gdp::MixingDistribution::beta(0.5, 1.0);
  gdp::ScaleMixture mixture;
  mixture.alpha = 1.0;
  mixture.normal_convention = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(gdp::sample_scale_mixture(
        h, mixture, static_cast<std::size_t>(state.range(0)), 11, mode(state)));
  label(state);
}

void BM_PosteriorSampler(benchmark::State& state) {
  const auto h = gdp::MixingDistribution::beta(2.0, 3.0);
  const gdp::PosteriorSampler sampler(h, gdp::BaseMeasure::standard_normal(),
                                      gdp::Dataset::distinct({-1.2, -0.3, 0.1, 0.4, 0.9, 1.7}),
                                      1e-10);
  for (auto _ : state)
    benchmark::DoNotOptimize(sampler.sample_set_masses(
        -0.5, 0.5, static_cast<std::size_t>(state.range(0)), 13, mode(state)));
  label(state);
}

void BM_DensityEstimate(benchmark::State& state) {
  const auto normal = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  };
  const auto grid = gdp::tabulate_function(normal, -12.0, 12.0, 20001);
  std::vector<double> data;
  for (int i = 0; i < 40; ++i) data.push_back(-2.0 + 0.1 * i + 1e-3 * i * i);
  std::vector<double> ts(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < ts.size(); ++k)
    ts[k] = -6.0 + 12.0 * static_cast<double>(k) / static_cast<double>(ts.size() - 1);
  const auto h = gdp::MixingDistribution::beta(2.0, 3.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(gdp::density_estimate(data, grid, grid, h, ts, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_RandomMeans)->ArgsProduct({{1 << 12, 1 << 15}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaleMixture)->ArgsProduct({{1 << 12, 1 << 15}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PosteriorSampler)->ArgsProduct({{1 << 12, 1 << 15}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityEstimate)->ArgsProduct({{1 << 10, 1 << 13}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
