#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smq/model_state.hpp"
#include "smq/report.hpp"

namespace smq {

/// A quadrature result with its discretization diagnostics.
struct Estimate {
  double value = 0.0;
  /// Leading discretization error estimate from the h / 2h comparison.
  std::optional<double> error_estimate;
  /// Probability mass sitting below the node floor.
  double masked_mass = 0.0;
};

/// Mean of q under Omega.
double position_mean(const ModelState& state);

/// sum_i w_i int (q - q0)^2 rho_i dq.
double position_second_moment(const ModelState& state, double q0);

/// sum_i w_i int (4 / lambda_i^2) (m qdot - d_q S)^2 rho_i dq, which the
/// kinematics reduce to sum_i w_i int rho_i (d_q rho_i / rho_i)^2 dq.
Estimate weighted_velocity_deviation(const ModelState& state);

/// sum_i w_i int (qdot - d_q S / m)^2 rho_i dq. For the two-point distribution
/// this is <(qdot - d_q S_Q / m)^2>_S.
Estimate deviation_moment(const ModelState& state);

/// Var_Omega(qdot).
Estimate velocity_variance(const ModelState& state);

/// position_second_moment(q0) * weighted_velocity_deviation >= 1.
VerificationReport uncertainty_product_general(const ModelState& state, double q0,
                                               const Tolerances& tol = {});

/// int (q - q0)^2 rho * int (qdot - d_q S_Q / m)^2 rho >= hbar^2 / (4 m^2).
/// Requires the two-point distribution.
VerificationReport uncertainty_product_quantum(const ModelState& state, double q0,
                                               const Tolerances& tol = {});

struct Q0Sweep {
  std::vector<std::pair<double, double>> moments;  // (q0, moment)
  double mean = 0.0;
  /// Vertex of the least-squares parabola through the sweep (>= 3 distinct q0).
  std::optional<double> fitted_minimizer;
  /// |fitted_minimizer - mean| <= grid spacing (true when no fit is possible).
  bool minimizer_matches_mean = true;
};

/// Throws std::invalid_argument on an empty q0 list.
Q0Sweep q0_optimality_sweep(const ModelState& state, std::span<const double> q0_values);

/// Dq*Dp >= <(q - q0)^2> <(m qdot - d_q S_Q)^2> >= hbar^2 / 4, with Dq taken
/// as the moment about q0. q0 must lie within one grid spacing of the mean.
/// lhs = Dq*Dp, bound = hbar^2/4. Unlike other reports, slack and tolerance
/// are relative: slack = min((Dq*Dp - middle) / middle, (middle - bound) / bound).
VerificationReport uncertainty_chain_report(const ModelState& state, double q0,
                                            const Tolerances& tol = {});

}  // namespace smq
