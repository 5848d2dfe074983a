#pragma once

// Shared per-branch quadratures for the model operations.

#include <optional>
#include <string_view>
#include <utility>

#include "smq/model_state.hpp"
#include "smq/numerics.hpp"

namespace smq::detail {

/// int rho (d_q rho / rho)^2 dq, evaluated as 4 int (d_q psi)^2 with psi the
/// node-signed amplitude so simple nodes do not spoil the integrand.
double score_energy(const ScalarField& rho, double floor);

/// int rho * d_q S dq and int rho * (d_q S)^2 dq.
struct PhaseMoments {
  double mean_gradient;
  double mean_square_gradient;
};
PhaseMoments phase_moments(const BranchState& branch);

/// Evaluates fn on the state and on its coarsened copy, then extrapolates.
template <class Fn>
Extrapolated extrapolate(const ModelState& state, Fn&& fn) {
  const double fine = fn(state);
  const auto coarse = state.coarsened();
  return richardson(fine, coarse ? std::optional<double>(fn(*coarse)) : std::nullopt);
}

template <class Fn>
Extrapolated extrapolate(const ScalarField& field, Fn&& fn) {
  const double fine = fn(field);
  const auto coarse = field.coarsened();
  return richardson(fine, coarse ? std::optional<double>(fn(*coarse)) : std::nullopt);
}

/// sum_i w_i * (mass of rho_i where rho_i < floor_i)
double weighted_masked_mass(const ModelState& state);

/// Throws std::invalid_argument unless the state uses the two-point
/// distribution at |lambda| = hbar.
void require_canonical(const ModelState& state, std::string_view operation);

/// Combined error estimate of a product x*y from the estimates of x and y.
std::optional<double> product_error(double x, std::optional<double> ex, double y,
                                    std::optional<double> ey);

}  // namespace smq::detail
