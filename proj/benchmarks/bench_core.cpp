#include <benchmark/benchmark.h>

#include <memory>

#include "paircorr/arith.hpp"
#include "paircorr/limits.hpp"
#include "paircorr/measures.hpp"

using namespace paircorr;

namespace {

std::shared_ptr<const arith::Sieve> shared_sieve() {
  static auto s = std::make_shared<const arith::Sieve>(1'000'016);
  return s;
}

void BM_SieveBuild(benchmark::State& state) {
  for (auto _ : state) {
    arith::Sieve s(static_cast<std::uint32_t>(state.range(0)));
    benchmark::DoNotOptimize(s.phi(42));
  }
}
BENCHMARK(BM_SieveBuild)->Arg(100'000)->Arg(1'000'000);

void BM_MirskySum(benchmark::State& state) {
  auto sieve = shared_sieve();
  for (auto _ : state) {
    auto v = arith::mirsky_sum(*sieve, static_cast<double>(state.range(0)), 1, 1, 1);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_MirskySum)->Arg(100'000)->Arg(1'000'000);

void BM_CabkProduct(benchmark::State& state) {
  auto sieve = shared_sieve();
  for (auto _ : state) {
    auto c = arith::c_abk_product(*sieve, 3, 4, 6, 1'000'000);
    benchmark::DoNotOptimize(c.value);
  }
}
BENCHMARK(BM_CabkProduct);

void BM_CabkSeries(benchmark::State& state) {
  auto sieve = shared_sieve();
  for (auto _ : state) {
    double v = arith::c_abk_series(*sieve, 3, 4, 6, static_cast<std::uint32_t>(state.range(0)));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_CabkSeries)->Arg(10'000)->Arg(40'000);

void BM_EulerCdfGrid(benchmark::State& state) {
  auto sieve = shared_sieve();
  family::WeightedLogFamily fam(1, 1, family::WeightMode::euler);
  auto mu = measures::build_pair_correlation(fam, static_cast<std::uint32_t>(state.range(0)),
                                             family::ScalingSpec::trivial(), sieve);
  const double grid[] = {-3, -2, -1, -0.5, 0.5, 1, 2, 3};
  for (auto _ : state) {
    auto v = measures::cdf_grid(mu, grid);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_EulerCdfGrid)->Arg(500)->Arg(2000);

void BM_LinearEulerHistogram(benchmark::State& state) {
  auto sieve = shared_sieve();
  family::WeightedLogFamily fam(1, 1, family::WeightMode::euler);
  auto mu = measures::build_pair_correlation(fam, 2000, family::ScalingSpec::linear(), sieve);
  for (auto _ : state) {
    auto h = measures::bin(mu, 1.0, 4.0, 100, 8e9);
    benchmark::DoNotOptimize(h.counts.data());
  }
}
BENCHMARK(BM_LinearEulerHistogram);

} // namespace

BENCHMARK_MAIN();
