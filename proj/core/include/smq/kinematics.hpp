#pragma once

#include "smq/field.hpp"
#include "smq/model_state.hpp"

namespace smq {

/// qdot(q, lambda) = (d_q S + (lambda / 2) d_q rho / rho) / m on the branch
/// |lambda|. Near-node points carry the floored log-derivative.
/// Throws std::invalid_argument if |lambda_signed| matches no branch.
ScalarField velocity_field(const ModelState& state, double lambda_signed);

/// (qdot - d_q S / m)^2 = lambda^2 / (4 m^2) (d_q rho / rho)^2. Even in lambda.
ScalarField deviation_field(const ModelState& state, double lambda_signed);

/// (qdot(+hbar) + qdot(-hbar)) / 2, which reduces to d_q S / m.
ScalarField effective_velocity_field(const ModelState& state);

/// u = (hbar / 2m) d_q rho / rho.
ScalarField osmotic_velocity_field(const ModelState& state);

/// U = -(hbar^2 / 2m) d_q^2 sqrt(rho) / sqrt(rho). The amplitude is signed
/// across nodes and floored at sqrt(floor) in the denominator.
ScalarField quantum_potential_field(const ModelState& state);

}  // namespace smq
