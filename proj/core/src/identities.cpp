#include "smq/identities.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature_detail.hpp"
#include "smq/kinematics.hpp"

namespace smq {
namespace {

double operator_variance_on(const ModelState& s) {
  const auto& b = s.branches().front();
  const auto psi = signed_amplitude(b.rho(), s.floor(0)).amplitude;
  const auto pm = detail::phase_moments(b);
  const double hbar = s.hbar();
  return hbar * hbar * staggered_gradient_energy(psi) + pm.mean_square_gradient -
         pm.mean_gradient * pm.mean_gradient;
}

double convective_on(const ModelState& s) {
  const auto& b = s.branches().front();
  const auto pm = detail::phase_moments(b);
  const auto grad = derivative(b.phase());
  const auto& rho = b.rho();
  std::vector<double> f(rho.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = grad[i] - pm.mean_gradient;
    f[i] = rho[i] * d * d;
  }
  return integrate(rho.grid(), f);
}

double osmotic_on(const ModelState& s) {
  const double hbar = s.hbar();
  return 0.25 * hbar * hbar * detail::score_energy(s.branches().front().rho(), s.floor(0));
}

double mean_potential_on(const ModelState& s) {
  const auto u = quantum_potential_field(s);
  return integrate(multiply(s.branches().front().rho(), u));
}

double variance_of(const ScalarField& rho) {
  const Grid1D& g = rho.grid();
  std::vector<double> f(rho.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.point(i) * rho[i];
  const double mean = integrate(g, f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = g.point(i) - mean;
    f[i] = d * d * rho[i];
  }
  return integrate(g, f);
}

}  // namespace

Estimate operator_momentum_variance(const ModelState& state) {
  detail::require_canonical(state, "operator_momentum_variance");
  const auto e = detail::extrapolate(state, operator_variance_on);
  return {std::max(0.0, e.value), e.error_estimate, detail::weighted_masked_mass(state)};
}

MomentumDecomposition momentum_variance_decomposition(const ModelState& state,
                                                      const Tolerances& tol) {
  detail::require_canonical(state, "momentum_variance_decomposition");
  const double masked = detail::weighted_masked_mass(state);
  const auto osm = detail::extrapolate(state, osmotic_on);
  const auto conv = detail::extrapolate(state, convective_on);
  const Estimate osmotic{std::max(0.0, osm.value), osm.error_estimate, masked};
  const Estimate convective{std::max(0.0, conv.value), conv.error_estimate, masked};
  const auto dp = operator_momentum_variance(state);

  auto r = make_identity("momentum_variance_decomposition", osmotic.value + convective.value,
                         dp.value, tol.relative);
  r.grid = state.grid();
  r.masked_mass = masked;
  if (osm.error_estimate && conv.error_estimate && dp.error_estimate) {
    r.discretization_estimate = *osm.error_estimate + *conv.error_estimate + *dp.error_estimate;
  }
  r.details = {{"operator_variance", dp.value},
               {"osmotic_term", osmotic.value},
               {"convective_term", convective.value}};
  return {osmotic, convective, std::move(r)};
}

Estimate fisher_information(const ScalarField& rho, double floor_factor) {
  // -4 int psi psi'' rather than 4 int psi'^2: the same quantity after
  // integration by parts, but a different stencil from the osmotic term.
  const auto e = detail::extrapolate(rho, [floor_factor](const ScalarField& r) {
    const auto psi = signed_amplitude(r, relative_floor(r, floor_factor)).amplitude;
    const auto d2 = second_derivative(psi);
    std::vector<double> f(psi.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = psi[i] * d2[i];
    return -4.0 * integrate(r.grid(), f);
  });
  const auto ld = log_derivative(rho, relative_floor(rho, floor_factor));
  return {std::max(0.0, e.value), e.error_estimate, masked_mass(rho, ld.mask)};
}

VerificationReport fisher_link_report(const ModelState& state, const Tolerances& tol) {
  const auto decomposition = momentum_variance_decomposition(state, tol);
  const auto fisher = fisher_information(state.branches().front().rho(), state.floor_factor());
  const double hbar = state.hbar();
  const double scaled = 0.25 * hbar * hbar * fisher.value;
  auto r = make_identity("fisher_link", decomposition.osmotic.value, scaled, tol.relative);
  r.grid = state.grid();
  r.masked_mass = fisher.masked_mass;
  if (fisher.error_estimate) r.discretization_estimate = 0.25 * hbar * hbar * *fisher.error_estimate;
  r.details = {{"fisher_information", fisher.value}};
  return r;
}

VerificationReport cramer_rao_report(const ScalarField& rho, const Tolerances& tol,
                                     double floor_factor) {
  const auto variance = detail::extrapolate(rho, variance_of);
  const auto fisher = fisher_information(rho, floor_factor);
  auto r = make_inequality("cramer_rao", variance.value * fisher.value, 1.0, tol.relative);
  r.grid = rho.grid();
  r.masked_mass = fisher.masked_mass;
  r.discretization_estimate = detail::product_error(variance.value, variance.error_estimate,
                                                    fisher.value, fisher.error_estimate);
  r.details = {{"variance", variance.value}, {"fisher_information", fisher.value}};
  return r;
}

VerificationReport osmotic_mean_report(const ModelState& state, const Tolerances& tol) {
  const auto u = osmotic_velocity_field(state);
  const auto& rho = state.branches().front().rho();
  const double mean_u = integrate(multiply(rho, u));
  auto r = make_absolute_identity("osmotic_velocity_mean", mean_u, 0.0, tol.mean_zero);
  r.grid = state.grid();
  r.masked_mass = detail::weighted_masked_mass(state);
  return r;
}

VerificationReport osmotic_uncertainty_product(const ModelState& state, const Tolerances& tol) {
  detail::require_canonical(state, "osmotic_uncertainty_product");
  const double m = state.mass();
  const double hbar = state.hbar();
  const auto variance = detail::extrapolate(state, [](const ModelState& s) {
    return variance_of(s.branches().front().rho());
  });
  const auto u2 = detail::extrapolate(state, [m](const ModelState& s) {
    const double hb = s.hbar();
    return hb * hb / (4.0 * m * m) * detail::score_energy(s.branches().front().rho(), s.floor(0));
  });
  const auto deviation = deviation_moment(state);
  const double bound = hbar * hbar / (4.0 * m * m);
  auto r = make_inequality("osmotic_uncertainty_product", variance.value * u2.value, bound,
                           tol.relative);
  r.grid = state.grid();
  r.masked_mass = detail::weighted_masked_mass(state);
  r.discretization_estimate =
      detail::product_error(variance.value, variance.error_estimate, u2.value, u2.error_estimate);

  const auto u = osmotic_velocity_field(state);
  const double mean_u = integrate(multiply(state.branches().front().rho(), u));
  const double equivalence = std::abs(u2.value - deviation.value);
  r.details = {{"position_variance", variance.value},
               {"mean_square_osmotic_velocity", u2.value},
               {"velocity_deviation_moment", deviation.value},
               {"equivalence_gap", equivalence},
               {"mean_osmotic_velocity", mean_u}};
  if (equivalence > 1e-10 * std::max(deviation.value, 1e-300)) r.pass = false;
  return r;
}

VerificationReport quantum_potential_identity_report(const ModelState& state,
                                                     const Tolerances& tol) {
  detail::require_canonical(state, "quantum_potential_identity_report");
  const double m = state.mass();
  const auto deviation = deviation_moment(state);
  const double lhs = 0.5 * m * deviation.value;
  const auto potential = detail::extrapolate(state, mean_potential_on);

  auto r = make_identity("quantum_potential_identity", lhs, potential.value,
                         tol.quantum_potential);
  r.grid = state.grid();
  r.masked_mass = deviation.masked_mass;
  if (deviation.error_estimate && potential.error_estimate) {
    r.discretization_estimate = 0.5 * m * *deviation.error_estimate + *potential.error_estimate;
  }

  const auto& b = state.branches().front();
  const auto psi = signed_amplitude(b.rho(), state.floor(0)).amplitude;
  const auto dpsi = derivative(psi);
  const std::size_t last = psi.size() - 1;
  const double hbar = state.hbar();
  const double residual = hbar * hbar / (2.0 * m) *
                          (std::abs(psi[0] * dpsi[0]) + std::abs(psi[last] * dpsi[last]));
  r.details = {{"mean_kinetic_deviation", lhs},
               {"mean_quantum_potential", potential.value},
               {"boundary_residual", residual}};
  return r;
}

}  // namespace smq
