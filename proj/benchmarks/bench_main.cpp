#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "repagg/evaluate.hpp"
#include "repagg/profile.hpp"
#include "repagg/svr.hpp"

namespace {

using namespace repagg;

// Dense table: every consumer rates every product, so raters per product
// equals the consumer count and the naive form is quadratic in it.
std::vector<RatingRecord> dense_records(std::uint32_t consumers, std::uint32_t products) {
  std::mt19937_64 rng(9);
  return testing::random_records(rng, consumers, products, 1.0, true);
}

void BM_FluctuationHistogram(benchmark::State& state) {
  const auto consumers = static_cast<std::uint32_t>(state.range(0));
  const auto table = RatingTable::build(dense_records(consumers, 20), half_star_levels());
  for (auto _ : state) benchmark::DoNotOptimize(build_profiles(table, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_FluctuationHistogram)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_FluctuationNaive(benchmark::State& state) {
  const auto consumers = static_cast<std::uint32_t>(state.range(0));
  const auto recs = dense_records(consumers, 20);
  for (auto _ : state) {
    double sum = 0.0;
    for (std::uint32_t c = 1; c <= consumers; ++c) sum += testing::naive_fluctuation(recs, c, 0.95);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(recs.size()));
}
BENCHMARK(BM_FluctuationNaive)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMicrosecond);

void BM_BuildProfilesSparse(benchmark::State& state) {
  std::mt19937_64 rng(10);
  const auto recs = testing::random_records(rng, static_cast<std::uint32_t>(state.range(0)), 2000, 0.05, false);
  const auto table = RatingTable::build(recs, integer_levels());
  for (auto _ : state) benchmark::DoNotOptimize(build_profiles(table, {}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(table.size()));
}
BENCHMARK(BM_BuildProfilesSparse)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_KendallTauB(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> level(1, 9);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = level(rng);
    b[i] = a[i] + level(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau_b(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTauB)->RangeMultiplier(8)->Range(64, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_SvrFit(benchmark::State& state) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  FeatureMatrix x(kFeatureCount);
  std::vector<double> y;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    std::vector<double> row(kFeatureCount);
    for (auto& v : row) v = unit(rng);
    y.push_back(0.4 * row[0] + row[1] * row[3] + 0.1 * unit(rng));
    x.push_row(row);
  }
  for (auto _ : state) benchmark::DoNotOptimize(SupportVectorRegression::fit(x, y, {}));
}
BENCHMARK(BM_SvrFit)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
