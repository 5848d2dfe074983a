#include <benchmark/benchmark.h>

#include "smq/montecarlo.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"

using namespace smq;

namespace {

void BM_Sample(benchmark::State& st) {
  const auto s = build(StateSpec::two_gaussian(4.0, -1));
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto threads = static_cast<unsigned>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(sample(s, n, 7, threads));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Sample)->Args({100000, 1})->Args({1000000, 1})->Args({1000000, 4})->Unit(benchmark::kMillisecond);

void BM_Estimate(benchmark::State& st) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto batch = sample(s, 1000000, 7);
  const double q0 = position_mean(s);
  for (auto _ : st) benchmark::DoNotOptimize(estimate_uncertainty_product(batch, s, q0));
}
BENCHMARK(BM_Estimate)->Unit(benchmark::kMillisecond);

}  // namespace
