#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "smq/field.hpp"
#include "smq/grid.hpp"
#include "smq/numerics.hpp"
#include "smq/states.hpp"

using namespace smq;

namespace {

double max_error(const ScalarField& f, double (*exact)(double), std::size_t skip = 0) {
  double e = 0.0;
  for (std::size_t i = skip; i + skip < f.size(); ++i) {
    e = std::max(e, std::abs(f[i] - exact(f.grid().point(i))));
  }
  return e;
}

}  // namespace

TEST(Grid, RejectsDegenerateInput) {
  EXPECT_THROW(Grid1D(0.0, 1.0, 15), std::invalid_argument);
  EXPECT_THROW(Grid1D(1.0, 1.0, 100), std::invalid_argument);
  EXPECT_THROW(Grid1D(2.0, 1.0, 100), std::invalid_argument);
}

TEST(Grid, PointsAndSpacing) {
  const Grid1D g(-1.0, 1.0, 21);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.1);
  EXPECT_DOUBLE_EQ(g.point(0), -1.0);
  EXPECT_NEAR(g.point(20), 1.0, 1e-15);
  EXPECT_EQ(g.cell_index(-5.0), 0u);
  EXPECT_EQ(g.cell_index(5.0), 19u);
  EXPECT_EQ(g.cell_index(0.05), 10u);
}

TEST(Grid, CoarsenedKeepsEveryOtherPoint) {
  const Grid1D odd(0.0, 4.0, 41);
  const auto c = odd.coarsened();
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 21u);
  EXPECT_DOUBLE_EQ(c->q_max(), 4.0);

  const Grid1D even(0.0, 4.0, 40);
  const auto ce = even.coarsened();
  ASSERT_TRUE(ce);
  EXPECT_EQ(ce->size(), 20u);
  EXPECT_DOUBLE_EQ(ce->point(1), even.point(2));

  EXPECT_FALSE(Grid1D(0.0, 1.0, 20).coarsened());
}

TEST(Field, RejectsNonFiniteAndNamesIndex) {
  const Grid1D g(0.0, 1.0, 16);
  std::vector<double> v(16, 1.0);
  v[7] = std::nan("");
  try {
    ScalarField f(g, v);
    FAIL() << "expected a throw";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
  }
  EXPECT_THROW(ScalarField(g, std::vector<double>(15, 0.0)), std::invalid_argument);
}

TEST(Field, InterpolateClampsAndIsLinear) {
  const Grid1D g(0.0, 1.5, 16);
  const auto f = ScalarField::sample(g, [](double q) { return 2.0 * q + 1.0; });
  EXPECT_NEAR(f.interpolate(0.333), 1.666, 1e-12);
  EXPECT_DOUBLE_EQ(f.interpolate(-3.0), 1.0);
  EXPECT_DOUBLE_EQ(f.interpolate(9.0), 4.0);
}

TEST(Derivative, ExactForQuadratics) {
  const Grid1D g(-2.0, 3.0, 51);
  const auto f = ScalarField::sample(g, [](double q) { return 3.0 * q * q - q + 2.0; });
  const auto d = derivative(f);
  const auto d2 = second_derivative(f);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(d[i], 6.0 * g.point(i) - 1.0, 1e-10);
    EXPECT_NEAR(d2[i], 6.0, 1e-8);
  }
}

TEST(Derivative, SecondOrderConvergence) {
  const auto err = [](std::size_t n) {
    const Grid1D g(0.0, 2.0, n);
    const auto f = ScalarField::sample(g, [](double q) { return std::sin(q); });
    return max_error(derivative(f), [](double q) { return std::cos(q); });
  };
  const double ratio = err(101) / err(201);
  EXPECT_NEAR(ratio, 4.0, 0.2);
}

TEST(Derivative, ParityOnSymmetricGrid) {
  const Grid1D g(-3.0, 3.0, 121);
  const auto f = ScalarField::sample(g, [](double q) { return std::exp(-q * q) * std::cos(q); });
  const auto d = derivative(f);
  const auto d2 = second_derivative(f);
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(d[i], -d[n - 1 - i], 1e-14);
    EXPECT_NEAR(d2[i], d2[n - 1 - i], 1e-12);
  }
}

TEST(Derivative, Linear) {
  const Grid1D g(-1.0, 1.0, 41);
  const auto f = ScalarField::sample(g, [](double q) { return std::sin(3 * q); });
  const auto h = ScalarField::sample(g, [](double q) { return q * q * q; });
  const auto lhs = derivative(2.0 * f + h);
  const auto rhs = 2.0 * derivative(f) + derivative(h);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(lhs[i], rhs[i], 1e-12);
}

TEST(Integrate, SimpsonExactForCubicsOddCount) {
  const Grid1D g(-1.0, 2.0, 31);
  const auto f = ScalarField::sample(g, [](double q) { return q * q * q - 2 * q * q + 1; });
  EXPECT_NEAR(integrate(f), 0.75, 1e-13);
}

TEST(Integrate, EvenCountFallsBackOnLastInterval) {
  const Grid1D g(0.0, 1.0, 32);
  const auto f = ScalarField::sample(g, [](double q) { return q; });
  EXPECT_NEAR(integrate(f), 0.5, 1e-14);
}

TEST(Integrate, GaussianMatchesIndependentQuadrature) {
  const Grid1D g(-8.0, 8.0, 801);
  const auto f = ScalarField::sample(g, [](double q) { return std::exp(-q * q) * (1 + q * q); });
  const double ref = oracle::integrate([](double q) { return std::exp(-q * q) * (1 + q * q); }, -8, 8);
  EXPECT_NEAR(integrate(f), ref, 1e-12);
  EXPECT_NEAR(ref, 1.5 * std::sqrt(std::numbers::pi), 1e-13);
}

TEST(Integrate, RejectsLengthMismatch) {
  const Grid1D g(0.0, 1.0, 16);
  std::vector<double> v(17, 1.0);
  EXPECT_THROW(integrate(g, v), std::invalid_argument);
}

TEST(LogDerivative, FloorMustBePositive) {
  const Grid1D g(-1.0, 1.0, 21);
  const auto rho = ScalarField::constant(g, 1.0);
  EXPECT_THROW(log_derivative(rho, 0.0), std::invalid_argument);
  EXPECT_THROW(log_derivative(rho, -1.0), std::invalid_argument);
}

TEST(LogDerivative, GaussianIsLinear) {
  const Grid1D g(-6.0, 6.0, 1201);
  const auto rho = ScalarField::sample(g, [](double q) { return std::exp(-q * q); });
  const double floor = relative_floor(rho);
  const auto ld = log_derivative(rho, floor);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(ld.mask[i], rho[i] < floor);
  // leading central-difference error is h^2 (rho'''/rho) / 6 = h^2 (12q - 8q^3) / 6
  const double h = g.spacing();
  for (std::size_t i = 300; i <= 900; ++i) {
    const double q = g.point(i);
    EXPECT_NEAR(ld.field[i], -2.0 * q, 1.05 * h * h * std::abs(12 * q - 8 * q * q * q) / 6 + 1e-6 * h * h);
  }
}

TEST(LogDerivative, NodeIsMaskedWithSmallMass) {
  const auto state = build(StateSpec::two_gaussian(4.0, -1));
  const auto& rho = state.branches()[0].rho();
  const auto ld = log_derivative(rho, relative_floor(rho));
  ASSERT_GT(ld.masked_count(), 0u);
  const std::size_t mid = rho.size() / 2;
  EXPECT_TRUE(ld.mask[mid]);
  EXPECT_LT(masked_mass(rho, ld.mask), 1e-3);
}

TEST(SignedAmplitude, RecoversOddEigenfunction) {
  const Grid1D g(-10.0, 10.0, 1001);
  const auto rho = ScalarField::sample(g, [](double q) {
    const double p = oracle::hermite_psi(3, 1.0, q);
    return p * p;
  });
  const auto sa = signed_amplitude(rho, relative_floor(rho));
  ASSERT_EQ(sa.nodes.size(), 3u);
  EXPECT_NEAR(sa.nodes[1], 0.0, 1e-9);
  EXPECT_NEAR(sa.nodes[2], std::sqrt(1.5), 2e-3);
  const double sign = sa.amplitude[700] > 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(sa.amplitude[i], sign * oracle::hermite_psi(3, 1.0, g.point(i)), 1e-12);
  }
}

TEST(SignedAmplitude, NoNodesForPositiveDensity) {
  const Grid1D g(-8.0, 8.0, 801);
  const auto rho = ScalarField::sample(g, [](double q) {
    return std::exp(-(q - 1) * (q - 1)) + std::exp(-(q + 1) * (q + 1));
  });
  EXPECT_TRUE(signed_amplitude(rho, relative_floor(rho)).nodes.empty());
}

TEST(StaggeredGradientEnergy, MatchesIntegral) {
  const Grid1D g(-8.0, 8.0, 2001);
  const auto f = ScalarField::sample(g, [](double q) { return std::exp(-0.5 * q * q); });
  // int q^2 exp(-q^2) = sqrt(pi) / 2
  EXPECT_NEAR(staggered_gradient_energy(f), 0.5 * std::sqrt(std::numbers::pi), 1e-5);
}

TEST(EndpointDecay, FlagsTruncatedDensity) {
  const Grid1D wide(-8.0, 8.0, 401);
  const Grid1D narrow(-2.0, 2.0, 401);
  const auto gauss = [](double q) { return std::exp(-q * q); };
  EXPECT_TRUE(endpoint_decay(ScalarField::sample(wide, gauss)).ok);
  const auto d = endpoint_decay(ScalarField::sample(narrow, gauss));
  EXPECT_FALSE(d.ok);
  EXPECT_NEAR(d.left_ratio, std::exp(-4.0), 1e-12);
}

TEST(Richardson, RemovesSecondOrderTerm) {
  // Q(h) = Q + c h^2 with fine h and coarse 2h
  const double exact = 1.25, c = 0.3, h = 0.01;
  const auto r = richardson(exact + c * h * h, exact + 4 * c * h * h);
  EXPECT_NEAR(r.value, exact, 1e-15);
  ASSERT_TRUE(r.error_estimate);
  EXPECT_NEAR(*r.error_estimate, c * h * h, 1e-15);
  const auto none = richardson(2.0, std::nullopt);
  EXPECT_EQ(none.value, 2.0);
  EXPECT_FALSE(none.error_estimate);
}
