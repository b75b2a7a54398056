#include <benchmark/benchmark.h>

#include <random>

#include "metastab/analyze.hpp"
#include "metastab/families.hpp"
#include "metastab/meta.hpp"

using namespace metastab;

static Net random_net(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(u(rng));
  return Net(DirectedWindow::omega(n), MetricSpace::unit_interval(), std::move(v));
}

static void BM_FindWitness(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Net a = random_net(n, 1);
  const Sampling eta = random_sampling(a.window(), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(find_witness(a, 0.5, eta));
}
BENCHMARK(BM_FindWitness)->RangeMultiplier(4)->Range(16, 1024);

static void BM_VerifyRateB(benchmark::State& state) {
  const auto w = DirectedWindow::omega(static_cast<std::size_t>(state.range(0)));
  const auto family = enumerate_family({.tag = FamilyTag::B, .window = w}).members();
  const Sampling eta = random_sampling(w, 2, 3);
  Rate r(w, {0.5});
  r.set(0.5, eta, rate_B(eta, w));
  for (auto _ : state) benchmark::DoNotOptimize(verify_rate(family, r, 0.5, eta).overall);
}
BENCHMARK(BM_VerifyRateB)->RangeMultiplier(2)->Range(8, 64);

static void BM_EnumerateC(benchmark::State& state) {
  const auto w = DirectedWindow::omega(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_family({.tag = FamilyTag::C, .window = w}).members().size());
}
BENCHMARK(BM_EnumerateC)->DenseRange(8, 14, 2);

static void BM_EmpiricalRate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Net> family;
  for (std::uint64_t k = 0; k < 32; ++k) family.push_back(random_net(n, k));
  const auto suite = make_suite("builtin", family.front().window());
  const std::vector<double> grid{0.5, 0.25, 0.125};
  for (auto _ : state) benchmark::DoNotOptimize(empirical_rate(family, grid, suite).cells.size());
}
BENCHMARK(BM_EmpiricalRate)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK_MAIN();
