#include <benchmark/benchmark.h>

#include <cmath>

#include "smq/field.hpp"
#include "smq/grid.hpp"
#include "smq/numerics.hpp"

using namespace smq;

namespace {

ScalarField gaussian(std::size_t n) {
  const Grid1D g(-8.0, 8.0, n);
  return ScalarField::sample(g, [](double q) { return std::exp(-q * q); });
}

void BM_Derivative(benchmark::State& st) {
  const auto f = gaussian(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(derivative(f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Derivative)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Integrate(benchmark::State& st) {
  const auto f = gaussian(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(integrate(f));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Integrate)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_SignedAmplitude(benchmark::State& st) {
  const Grid1D g(-8.0, 8.0, static_cast<std::size_t>(st.range(0)));
  // odd state: one node at the origin
  const auto rho = ScalarField::sample(g, [](double q) { return q * q * std::exp(-q * q); });
  const double floor = relative_floor(rho);
  for (auto _ : st) benchmark::DoNotOptimize(signed_amplitude(rho, floor));
}
BENCHMARK(BM_SignedAmplitude)->Arg(2001)->Arg(8001);

}  // namespace
