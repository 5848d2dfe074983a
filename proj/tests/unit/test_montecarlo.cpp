#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "smq/counter_rng.hpp"
#include "smq/kinematics.hpp"
#include "smq/montecarlo.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"

using namespace smq;

namespace {

// Reference SplitMix64 as a sequential stream.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

}  // namespace

TEST(CounterRng, MatchesSequentialSplitMix) {
  SplitMix64 zero{0};
  EXPECT_EQ(zero.next(), 0xE220A8397B1DCDAFULL);  // published first output for seed 0

  const std::uint64_t seed = 987654321;
  const CounterRng rng(seed);
  SplitMix64 ref{CounterRng::mix(seed)};
  for (std::uint64_t c = 0; c < 1000; ++c) EXPECT_EQ(rng.bits(c), ref.next());
}

TEST(CounterRng, UniformRangeAndMean) {
  const CounterRng rng(7);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(Sampling, RejectsEmptyBatch) {
  const auto s = build(StateSpec::gaussian_ground());
  EXPECT_THROW(sample(s, 0, 1), std::invalid_argument);
}

TEST(Sampling, DeterministicAcrossThreadCounts) {
  const auto s = build(StateSpec::two_gaussian(3.0, -1));
  const auto a = sample(s, 20001, 99, 1);
  const auto b = sample(s, 20001, 99, 3);
  const auto c = sample(s, 20001, 99, 8);
  ASSERT_EQ(a.size(), 20001u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a.samples[i].q, b.samples[i].q);
    ASSERT_EQ(a.samples[i].q, c.samples[i].q);
    ASSERT_EQ(a.samples[i].lambda, c.samples[i].lambda);
  }
  const auto d = sample(s, 100, 100, 1);
  EXPECT_NE(d.samples[0].q, a.samples[0].q);
  EXPECT_EQ(a.state_fingerprint, fingerprint(s));
}

TEST(Sampling, PrefixIsStableWhenNGrows) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto small = sample(s, 100, 5);
  const auto large = sample(s, 1000, 5);
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small.samples[i].q, large.samples[i].q);
}

TEST(Sampling, GaussianMeanWithinCltBound) {
  const auto s = build(StateSpec::gaussian_ground());
  const std::size_t n = 1000000;
  const auto batch = sample(s, n, 2024);
  double sum = 0;
  std::size_t positive = 0;
  for (const auto& x : batch.samples) {
    sum += x.q;
    positive += x.lambda > 0;
    ASSERT_TRUE(std::abs(x.lambda) == 1.0);
  }
  EXPECT_LT(std::abs(sum / n), 4.0 * std::sqrt(0.5 / n));
  EXPECT_LT(std::abs(static_cast<double>(positive) / n - 0.5), 4.0 * std::sqrt(0.25 / n));
}

TEST(Sampling, AtomFrequenciesFollowWeights) {
  const LambdaDistribution lambda({{0.8, 0.2}, {1.2, 0.8}});
  const auto s = build(StateSpec::gaussian_ground(), lambda);
  const std::size_t n = 200000;
  const auto batch = sample(s, n, 3);
  std::size_t small = 0;
  for (const auto& x : batch.samples) small += std::abs(x.lambda) == 0.8;
  EXPECT_LT(std::abs(static_cast<double>(small) / n - 0.2), 4.0 * std::sqrt(0.16 / n));
}

TEST(Sampling, VelocitiesFlipSignWithLambda) {
  const auto s = build(StateSpec::chirped_gaussian(0.25));
  SampleBatch batch;
  batch.seed = 0;
  batch.state_fingerprint = fingerprint(s);
  for (double q : {-1.3, -0.2, 0.0, 0.4, 2.1}) {
    batch.samples.push_back({q, 1.0});
    batch.samples.push_back({q, -1.0});
  }
  const auto v = sample_velocities(batch, s);
  const auto eff = effective_velocity_field(s);
  for (std::size_t i = 0; i < v.size(); i += 2) {
    const double drift = eff.interpolate(batch.samples[i].q);
    EXPECT_NEAR(v[i] - drift, -(v[i + 1] - drift), 1e-12);
  }
}

TEST(Sampling, VelocitiesRejectForeignBatch) {
  const auto a = build(StateSpec::gaussian_ground());
  const auto b = build(StateSpec::gaussian_ground(1.1));
  const auto batch = sample(a, 10, 1);
  EXPECT_THROW(sample_velocities(batch, b), std::invalid_argument);
  EXPECT_NE(fingerprint(a), fingerprint(b));
}

TEST(MonteCarlo, ConcordanceForNonGaussianState) {
  const auto s = build(StateSpec::two_gaussian(4.0, -1));
  const auto batch = sample(s, 200000, 11);
  const auto mc = estimate_uncertainty_product(batch, s, position_mean(s));
  ASSERT_EQ(mc.reports.size(), 3u);
  for (const auto& r : mc.reports) {
    EXPECT_TRUE(r.pass) << r.name << " z=" << *r.detail("z_score");
    EXPECT_EQ(*r.detail("n_samples"), 200000.0);
  }
  EXPECT_GT(mc.product.standard_error, 0.0);
  EXPECT_NEAR(mc.quadrature_product, 10.514867043229522, 1e-5);
}

TEST(MonteCarlo, MultiAtomConcordance) {
  const auto s = build(StateSpec::gaussian_ground(), LambdaDistribution({{0.5, 0.5}, {2.0, 0.5}}));
  const auto batch = sample(s, 200000, 12);
  const auto mc = estimate_uncertainty_product(batch, s, 0.0);
  for (const auto& r : mc.reports) EXPECT_TRUE(r.pass) << r.name;
  EXPECT_NEAR(mc.quadrature_sigma_qdot, 0.625, 1e-6);
}

TEST(Histogram, KsPassesAndDensityIsNormalized) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto batch = sample(s, 100000, 8);
  const auto h = velocity_histogram(batch, s, 50);
  ASSERT_EQ(h.edges.size(), 51u);
  double total = 0;
  for (std::size_t b = 0; b < h.counts.size(); ++b) total += h.density[b] * (h.edges[b + 1] - h.edges[b]);
  EXPECT_NEAR(total, 1.0, 1e-12);
  ASSERT_TRUE(h.ks);
  EXPECT_TRUE(h.ks->pass);
  EXPECT_NEAR(h.ks->critical_value, kKolmogorovQuantile99 / std::sqrt(100000.0), 1e-15);
  EXPECT_THROW(velocity_histogram(batch, s, 9), std::invalid_argument);
}

TEST(Histogram, NoAnalyticReferenceForExcitedState) {
  const auto s = build(StateSpec::harmonic_excited(1));
  const auto h = velocity_histogram(sample(s, 5000, 1), s, 20);
  EXPECT_FALSE(h.analytic);
  EXPECT_FALSE(h.ks);
}

TEST(Histogram, KsDetectsWrongDistribution) {
  // samples of a wider state judged against the narrower state's law
  const auto narrow = build(StateSpec::gaussian_ground(1.0));
  const auto wide = build(StateSpec::gaussian_ground(1.2));
  const auto batch = sample(wide, 100000, 4);
  auto relabeled = batch;
  relabeled.state_fingerprint = fingerprint(narrow);
  // q values come from the wide state; their velocities under the narrow one are too small
  const auto h = velocity_histogram(relabeled, narrow, 40);
  ASSERT_TRUE(h.ks);
  EXPECT_FALSE(h.ks->pass);
}
