#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "smq/identities.hpp"
#include "smq/states.hpp"
#include "smq/uncertainty.hpp"

using namespace smq;

namespace {

StateSpec random_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (rng() % 5) {
    case 0: return StateSpec::gaussian_ground(0.5 + 1.5 * u(rng));
    case 1: return StateSpec::harmonic_excited(1 + static_cast<int>(rng() % 4), 0.5 + u(rng));
    case 2: return StateSpec::boosted_gaussian(-2.0 + 4.0 * u(rng), 0.5 + u(rng));
    case 3: {
      auto s = StateSpec::two_gaussian(1.0 + 5.0 * u(rng), rng() % 2 ? 1 : -1, 0.5 + u(rng));
      s.amplitude_ratio = 0.3 + 0.7 * u(rng);
      return s;
    }
    default: return StateSpec::chirped_gaussian(-0.5 + u(rng), 0.5 + u(rng));
  }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Properties, SchwartzBoundOverRandomStates) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const auto spec = random_spec(rng);
    const auto s = build(spec);
    const double q0 = position_mean(s) + (u(rng) - 0.5);
    const auto r = uncertainty_product_general(s, q0);
    EXPECT_GE(r.lhs, 1.0 - 1e-6) << to_string(spec.kind);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Properties, TranslationInvariance) {
  for (auto spec : {StateSpec::harmonic_excited(2), StateSpec::two_gaussian(3.0, -1),
                    StateSpec::chirped_gaussian(0.3)}) {
    const auto base = build(spec);
    spec.center = 2.75;
    const auto shifted = build(spec);
    EXPECT_NEAR(position_mean(shifted) - position_mean(base), 2.75, 1e-9);
    const auto a = uncertainty_product_quantum(base, position_mean(base));
    const auto b = uncertainty_product_quantum(shifted, position_mean(shifted));
    EXPECT_LT(rel(a.lhs, b.lhs), 1e-9);
    EXPECT_LT(rel(momentum_variance_decomposition(base).report.bound_or_rhs,
                  momentum_variance_decomposition(shifted).report.bound_or_rhs),
              1e-9);
    EXPECT_LT(rel(quantum_potential_identity_report(base).bound_or_rhs,
                  quantum_potential_identity_report(shifted).bound_or_rhs),
              1e-8);
  }
}

TEST(Properties, ScaledUnitsLeaveDimensionlessRatiosUnchanged) {
  // rescaling m and hbar with omega fixed by a = m omega / hbar = 1 keeps the
  // product in units of hbar^2 / 4m^2 and the general product unchanged
  const auto ref = build(StateSpec::harmonic_excited(2));
  const double ref_ratio = uncertainty_product_quantum(ref, 0.0).lhs / 0.25;
  for (auto [m, hbar] : {std::pair{2.0, 1.0}, std::pair{0.5, 3.0}, std::pair{4.0, 0.25}}) {
    auto spec = StateSpec::harmonic_excited(2, hbar / m);
    spec.mass = m;
    spec.hbar = hbar;
    const auto s = build(spec);
    const auto q = uncertainty_product_quantum(s, 0.0);
    EXPECT_DOUBLE_EQ(q.bound_or_rhs, hbar * hbar / (4 * m * m));
    EXPECT_LT(rel(q.lhs / q.bound_or_rhs, ref_ratio), 1e-6);
    EXPECT_LT(rel(uncertainty_product_general(s, 0.0).lhs, 25.0), 1e-6);
  }
}

TEST(Properties, EveryReportRecordsGridAndTolerance) {
  const auto s = build(StateSpec::harmonic_excited(1));
  Tolerances tol;
  tol.relative = 3e-7;
  for (const auto& r : {uncertainty_product_general(s, 0.0, tol), uncertainty_product_quantum(s, 0.0, tol),
                        momentum_variance_decomposition(s, tol).report, uncertainty_chain_report(s, 0.0, tol),
                        fisher_link_report(s, tol), osmotic_uncertainty_product(s, tol),
                        quantum_potential_identity_report(s, tol)}) {
    ASSERT_TRUE(r.grid) << r.name;
    EXPECT_EQ(*r.grid, s.grid());
    EXPECT_GT(r.tolerance, 0.0);
    EXPECT_TRUE(r.relative_tolerance == 3e-7 || r.name == "quantum_potential_identity") << r.name;
  }
}
