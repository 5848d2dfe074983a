#include <benchmark/benchmark.h>

#include "smq/identities.hpp"
#include "smq/lambda_distribution.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"

using namespace smq;

namespace {

void BM_BuildState(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(build(StateSpec::two_gaussian(4.0, -1)));
}
BENCHMARK(BM_BuildState);

void BM_GeneralProduct(benchmark::State& st) {
  const auto lambda = LambdaDistribution::symmetric_spread(1.0, 0.3);
  const auto s = build(StateSpec::gaussian_ground(), lambda);
  const double q0 = position_mean(s);
  for (auto _ : st) benchmark::DoNotOptimize(uncertainty_product_general(s, q0));
}
BENCHMARK(BM_GeneralProduct);

void BM_CanonicalSuite(benchmark::State& st) {
  const auto s = build(StateSpec::harmonic_excited(2));
  for (auto _ : st) {
    const double q0 = position_mean(s);
    benchmark::DoNotOptimize(uncertainty_product_quantum(s, q0));
    benchmark::DoNotOptimize(uncertainty_chain_report(s, q0));
    benchmark::DoNotOptimize(momentum_variance_decomposition(s));
    benchmark::DoNotOptimize(fisher_link_report(s));
    benchmark::DoNotOptimize(quantum_potential_identity_report(s));
  }
}
BENCHMARK(BM_CanonicalSuite);

}  // namespace
