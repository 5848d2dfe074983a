#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"

using namespace smq;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Uncertainty, GaussianSaturatesBothForms) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto g = uncertainty_product_general(s, 0.0);
  const auto q = uncertainty_product_quantum(s, 0.0);
  EXPECT_TRUE(g.pass);
  EXPECT_TRUE(q.pass);
  EXPECT_LT(rel(g.lhs, 1.0), 1e-6);
  EXPECT_LT(rel(q.lhs, 0.25), 1e-6);
  EXPECT_LT(rel(*q.detail("position_second_moment"), 0.5), 1e-9);
  EXPECT_LT(rel(*q.detail("velocity_deviation_moment"), 0.5), 1e-6);
  ASSERT_TRUE(q.grid);
  EXPECT_EQ(q.grid->size(), 2001u);
  ASSERT_TRUE(q.discretization_estimate);
  EXPECT_LT(*q.discretization_estimate, 1e-5);
}

TEST(Uncertainty, ExcitedStatesMatchOracle) {
  for (int n = 1; n <= 4; ++n) {
    const auto s = build(StateSpec::harmonic_excited(n));
    const auto m = oracle::harmonic_excited(n, 1.0);
    const auto g = uncertainty_product_general(s, 0.0);
    EXPECT_LT(rel(g.lhs, m.variance * m.fisher), 1e-6) << "n=" << n;
    EXPECT_LT(rel(g.lhs, (2 * n + 1.0) * (2 * n + 1.0)), 1e-6);
    EXPECT_GT(g.slack, 0.0);
  }
}

TEST(Uncertainty, TwoGaussianMatchesClosedForm) {
  for (int sign : {1, -1}) {
    const auto s = build(StateSpec::two_gaussian(4.0, sign));
    const auto m = oracle::two_gaussian(1.0, 4.0, sign);
    const auto g = uncertainty_product_general(s, position_mean(s));
    EXPECT_LT(rel(g.lhs, m.variance * m.fisher), 1e-6);
    const auto q = uncertainty_product_quantum(s, position_mean(s));
    EXPECT_LT(rel(q.lhs, 0.25 * m.variance * m.fisher), 1e-6);
  }
  // frozen arbitrary-precision values for separation 4, a = 1
  const auto plus = build(StateSpec::two_gaussian(4.0, 1));
  EXPECT_LT(rel(uncertainty_product_general(plus, 0.0).lhs, 7.5818074429559036), 1e-6);
  const auto minus = build(StateSpec::two_gaussian(4.0, -1));
  EXPECT_LT(rel(uncertainty_product_general(minus, 0.0).lhs, 10.514867043229522), 1e-6);
}

TEST(Uncertainty, Q0SweepIsParallelAxisParabola) {
  const auto s = build(StateSpec::gaussian_ground());
  const std::vector<double> q0s{-1.0, 0.0, 1.0};
  const auto sweep = q0_optimality_sweep(s, q0s);
  ASSERT_EQ(sweep.moments.size(), 3u);
  EXPECT_NEAR(sweep.moments[0].second, 1.5, 1e-9);
  EXPECT_NEAR(sweep.moments[1].second, 0.5, 1e-9);
  EXPECT_NEAR(sweep.moments[2].second, 1.5, 1e-9);
  ASSERT_TRUE(sweep.fitted_minimizer);
  EXPECT_NEAR(*sweep.fitted_minimizer, 0.0, 1e-9);
  EXPECT_TRUE(sweep.minimizer_matches_mean);
  EXPECT_THROW(q0_optimality_sweep(s, {}), std::invalid_argument);
}

TEST(Uncertainty, AsymmetricDensityMinimumAtMean) {
  auto spec = StateSpec::two_gaussian(4.0, 1);
  spec.amplitude_ratio = 0.5;
  const auto s = build(spec);
  const auto m = oracle::two_gaussian(1.0, 4.0, 1, 0.5);
  EXPECT_NEAR(position_mean(s), m.mean, 1e-9);
  std::vector<double> q0s;
  for (int k = -4; k <= 4; ++k) q0s.push_back(m.mean + 0.3 * k + 0.05);
  const auto sweep = q0_optimality_sweep(s, q0s);
  ASSERT_TRUE(sweep.fitted_minimizer);
  EXPECT_NEAR(*sweep.fitted_minimizer, m.mean, 1e-6);
  for (const auto& [q0, moment] : sweep.moments) EXPECT_NEAR(moment, m.moment_about(q0), 1e-8);
}

TEST(Uncertainty, OffCenterQ0IsStrict) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto r = uncertainty_product_general(s, 0.5);
  // (0.5 + 0.25) * 2
  EXPECT_LT(rel(r.lhs, 1.5), 1e-6);
}

TEST(Uncertainty, GeneralFormWithLambdaAtoms) {
  // the example sweep point: atoms hbar * {0.9, 1.1}, half the pair weight each
  const auto lambda = LambdaDistribution::symmetric_spread(1.0, 0.1);
  const auto s = build(StateSpec::gaussian_ground(), lambda);
  const auto r = uncertainty_product_general(s, position_mean(s));
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.lhs, 1.0 - 1e-6);
  // mixture of widths a_i = 1/lambda_i: (sum w / 2a_i)(sum w 2a_i)
  double var = 0, fisher = 0;
  for (const auto& atom : lambda.atoms()) {
    var += atom.weight * atom.magnitude / 2.0;
    fisher += atom.weight * 2.0 / atom.magnitude;
  }
  EXPECT_LT(rel(r.lhs, var * fisher), 1e-6);
  EXPECT_THROW(uncertainty_product_quantum(s, 0.0), std::invalid_argument);
  EXPECT_THROW(uncertainty_chain_report(s, 0.0), std::invalid_argument);
}

TEST(Uncertainty, VelocityVarianceOfBoostedGaussian) {
  const auto s = build(StateSpec::boosted_gaussian(2.0, 1.0));
  EXPECT_LT(rel(velocity_variance(s).value, 0.5), 1e-6);
  EXPECT_LT(rel(deviation_moment(s).value, 0.5), 1e-6);
}

TEST(Uncertainty, ChirpSeparatesVarianceFromDeviation) {
  // S = c q^2 adds 2 c q / m to qdot: Var(qdot) = 0.5 + 4 c^2 * 0.5
  const double c = 0.3;
  const auto s = build(StateSpec::chirped_gaussian(c));
  EXPECT_LT(rel(deviation_moment(s).value, 0.5), 1e-6);
  EXPECT_LT(rel(velocity_variance(s).value, 0.5 + 2 * c * c), 1e-6);
}

TEST(Uncertainty, ChainCoincidesForGaussian) {
  const auto s = build(StateSpec::gaussian_ground());
  const auto r = uncertainty_chain_report(s, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(rel(*r.detail("delta_q_delta_p"), 0.25), 1e-6);
  EXPECT_LT(rel(*r.detail("middle_product"), 0.25), 1e-6);
  EXPECT_DOUBLE_EQ(*r.detail("hbar_squared_over_4"), 0.25);
  EXPECT_THROW(uncertainty_chain_report(s, 1.0), std::invalid_argument);
}

TEST(Uncertainty, ChainIsStrictForChirpedState) {
  const auto s = build(StateSpec::chirped_gaussian(0.3));
  const auto r = uncertainty_chain_report(s, 0.0);
  EXPECT_TRUE(r.pass);
  // Dq Dp = 0.5 * 0.68 > middle = 0.25
  EXPECT_LT(rel(*r.detail("delta_q_delta_p"), 0.34), 1e-6);
  EXPECT_LT(rel(*r.detail("middle_product"), 0.25), 1e-6);
  EXPECT_GT(*r.detail("first_link_slack"), 0.08);
}

TEST(Uncertainty, DimensionalScaling) {
  // m = 2, hbar = 3, omega = 0.7: a = m omega / hbar, bound hbar^2 / 4m^2
  StateSpec spec = StateSpec::gaussian_ground(0.7, 2.0, 3.0);
  const auto s = build(spec);
  const double a = 2.0 * 0.7 / 3.0;
  const auto q = uncertainty_product_quantum(s, 0.0);
  EXPECT_DOUBLE_EQ(q.bound_or_rhs, 9.0 / 16.0);
  EXPECT_LT(rel(q.lhs, 9.0 / 16.0), 1e-6);
  EXPECT_LT(rel(*q.detail("position_second_moment"), 0.5 / a), 1e-9);
  EXPECT_LT(rel(uncertainty_product_general(s, 0.0).lhs, 1.0), 1e-6);
}
