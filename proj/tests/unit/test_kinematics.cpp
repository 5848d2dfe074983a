#include <gtest/gtest.h>

#include <cmath>

#include "smq/kinematics.hpp"
#include "smq/numerics.hpp"
#include "smq/states.hpp"

using namespace smq;

TEST(Kinematics, GaussianVelocityIsLinear) {
  // S = 0, rho ~ exp(-a q^2): qdot = -a lambda q / m
  auto spec = StateSpec::gaussian_ground(1.0, 2.0, 1.0);  // a = m omega / hbar = 2
  const auto s = build(spec);
  for (double lambda : {1.0, -1.0}) {
    const auto v = velocity_field(s, lambda);
    const auto& g = s.grid();
    // stencil error of d rho / rho for exp(-2 q^2) is h^2 |48 q - 64 q^3| / 6
    const double h = g.spacing();
    for (std::size_t i = 200; i + 200 < g.size(); i += 50) {
      const double q = g.point(i);
      const double tol = 0.25 * 1.05 * h * h * std::abs(48 * q - 64 * q * q * q) / 6 + 1e-12;
      EXPECT_NEAR(v[i], -lambda * q, tol);
    }
  }
}

TEST(Kinematics, VelocityDeviationIsOddInLambda) {
  const auto s = build(StateSpec::chirped_gaussian(0.4));
  const auto plus = velocity_field(s, 1.0);
  const auto minus = velocity_field(s, -1.0);
  const auto eff = effective_velocity_field(s);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    EXPECT_NEAR(plus[i] - eff[i], -(minus[i] - eff[i]), 1e-12 * (1 + std::abs(plus[i])));
  }
  const auto dev = deviation_field(s, 1.0);
  const auto dev_minus = deviation_field(s, -1.0);
  for (std::size_t i = 0; i < dev.size(); ++i) EXPECT_DOUBLE_EQ(dev[i], dev_minus[i]);
}

TEST(Kinematics, EffectiveVelocityIsPhaseGradient) {
  const auto s = build(StateSpec::boosted_gaussian(1.3, 1.0));
  const auto eff = effective_velocity_field(s);
  for (std::size_t i = 0; i < eff.size(); ++i) EXPECT_NEAR(eff[i], 1.3, 1e-9);
}

TEST(Kinematics, OsmoticVelocityIsHalfDifference) {
  for (const auto& spec : {StateSpec::gaussian_ground(), StateSpec::harmonic_excited(2),
                           StateSpec::two_gaussian(3.0, 1), StateSpec::chirped_gaussian(0.2)}) {
    const auto s = build(spec);
    const auto u = osmotic_velocity_field(s);
    const auto plus = velocity_field(s, s.hbar());
    const auto minus = velocity_field(s, -s.hbar());
    const double scale = u.max_abs();
    for (std::size_t i = 0; i < u.size(); ++i) {
      EXPECT_NEAR(u[i], 0.5 * (plus[i] - minus[i]), 1e-13 * scale);
    }
  }
}

TEST(Kinematics, RejectsUnknownLambdaAndNonCanonicalEffective) {
  const auto s = build(StateSpec::gaussian_ground());
  EXPECT_THROW(velocity_field(s, 2.0), std::invalid_argument);
  const auto multi = build(StateSpec::gaussian_ground(), LambdaDistribution::symmetric_spread(1.0, 0.2));
  EXPECT_THROW(effective_velocity_field(multi), std::invalid_argument);
  EXPECT_THROW(osmotic_velocity_field(multi), std::invalid_argument);
  EXPECT_NO_THROW(velocity_field(multi, -0.8));
}

TEST(Kinematics, GaussianQuantumPotential) {
  // U = (hbar^2 a / 2m)(1 - a q^2); with V = m omega^2 q^2 / 2 the sum is hbar omega / 2
  const auto s = build(StateSpec::gaussian_ground(1.0, 1.0, 1.0));
  const auto u = quantum_potential_field(s);
  const auto& g = s.grid();
  const auto& rho = s.branches()[0].rho();
  const double h = g.spacing();
  for (std::size_t i = 0; i < g.size(); i += 20) {
    if (rho[i] < 1e-6 * rho.max()) continue;
    const double q = g.point(i);
    // stencil error of psi''/psi is h^2 (q^4 - 6 q^2 + 3) / 12
    const double tol = 0.5 * 1.05 * h * h * std::abs(q * q * q * q - 6 * q * q + 3) / 12 + 1e-10;
    EXPECT_NEAR(u[i], 0.5 * (1 - q * q), tol);
    EXPECT_NEAR(u[i] + 0.5 * q * q, 0.5, tol);
  }
}

TEST(Kinematics, EigenstateEnergyBalanceAwayFromNodes) {
  // U + V = (n + 1/2) hbar omega for an oscillator eigenstate
  const auto s = build(StateSpec::harmonic_excited(2));
  const auto u = quantum_potential_field(s);
  const auto& g = s.grid();
  const auto& rho = s.branches()[0].rho();
  for (std::size_t i = 0; i < g.size(); i += 7) {
    if (rho[i] < 1e-6 * rho.max()) continue;
    const double q = g.point(i);
    EXPECT_NEAR(u[i] + 0.5 * q * q, 2.5, 2e-3);
  }
}
