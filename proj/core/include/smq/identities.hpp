#pragma once

#include "smq/field.hpp"
#include "smq/model_state.hpp"
#include "smq/numerics.hpp"
#include "smq/report.hpp"
#include "smq/uncertainty.hpp"

namespace smq {

/// Variance of the momentum operator for Psi = sqrt(rho) exp(i S / hbar):
///   hbar^2 int (d_q sqrt(rho))^2 + int rho (d_q S)^2 - (int rho d_q S)^2.
/// The first term uses staggered differences of the node-signed amplitude.
Estimate operator_momentum_variance(const ModelState& state);

/// Dp = <(hbar/2 d_q rho / rho)^2>_S + <(d_q S - <d_q S>_S)^2>_S.
struct MomentumDecomposition {
  Estimate osmotic;
  Estimate convective;
  VerificationReport report;
};

MomentumDecomposition momentum_variance_decomposition(const ModelState& state,
                                                      const Tolerances& tol = {});

/// F = int (d_q rho)^2 / rho dq for the translation family of rho.
Estimate fisher_information(const ScalarField& rho, double floor_factor = kDefaultFloorFactor);

/// osmotic term == (hbar^2 / 4) F.
VerificationReport fisher_link_report(const ModelState& state, const Tolerances& tol = {});

/// Var(q) * F >= 1 for a single density.
VerificationReport cramer_rao_report(const ScalarField& rho, const Tolerances& tol = {},
                                     double floor_factor = kDefaultFloorFactor);

/// <u>_S == 0 (absolute tolerance tol.mean_zero).
VerificationReport osmotic_mean_report(const ModelState& state, const Tolerances& tol = {});

/// <(q - <q>)^2>_S <u^2>_S >= hbar^2 / (4 m^2). Fails as well if <u^2> and
/// the velocity deviation moment disagree beyond 1e-10 relative.
VerificationReport osmotic_uncertainty_product(const ModelState& state,
                                               const Tolerances& tol = {});

/// (1/2m) <(m qdot - d_q S_Q)^2>_S == <U>_S. details carry the boundary
/// residual (hbar^2 / 2m) |sqrt(rho) d_q sqrt(rho)| summed over both ends.
VerificationReport quantum_potential_identity_report(const ModelState& state,
                                                     const Tolerances& tol = {});

}  // namespace smq
