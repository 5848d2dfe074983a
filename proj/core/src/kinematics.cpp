#include "smq/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "quadrature_detail.hpp"
#include "smq/numerics.hpp"

namespace smq {

namespace detail {

double score_energy(const ScalarField& rho, double floor) {
  const auto psi = signed_amplitude(rho, floor).amplitude;
  const auto dpsi = derivative(psi);
  std::vector<double> integrand(dpsi.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) integrand[i] = 4.0 * dpsi[i] * dpsi[i];
  return integrate(rho.grid(), integrand);
}

PhaseMoments phase_moments(const BranchState& branch) {
  const auto grad = derivative(branch.phase());
  const auto& rho = branch.rho();
  std::vector<double> first(rho.size());
  std::vector<double> second(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    first[i] = rho[i] * grad[i];
    second[i] = rho[i] * grad[i] * grad[i];
  }
  return {integrate(rho.grid(), first), integrate(rho.grid(), second)};
}

double weighted_masked_mass(const ModelState& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& rho = state.branches()[i].rho();
    const auto ld = log_derivative(rho, state.floor(i));
    total += state.weight(i) * masked_mass(rho, ld.mask);
  }
  return total;
}

void require_canonical(const ModelState& state, std::string_view operation) {
  if (state.is_canonical()) return;
  std::ostringstream msg;
  msg << operation << ": needs the two-point lambda distribution at |lambda| = hbar = "
      << state.hbar() << ", got magnitudes {" << state.lambda().describe_magnitudes()
      << "}; use the general-form operations for other distributions";
  throw std::invalid_argument(msg.str());
}

std::optional<double> product_error(double x, std::optional<double> ex, double y,
                                    std::optional<double> ey) {
  if (!ex || !ey) return std::nullopt;
  return std::abs(y) * *ex + std::abs(x) * *ey;
}

}  // namespace detail

ScalarField velocity_field(const ModelState& state, double lambda_signed) {
  const BranchState& b = state.branch(lambda_signed);
  const auto index = *state.lambda().find(lambda_signed);
  const auto grad_s = derivative(b.phase());
  const auto ld = log_derivative(b.rho(), state.floor(index));
  std::vector<double> v(grad_s.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = (grad_s[i] + 0.5 * lambda_signed * ld.field[i]) / b.mass();
  }
  return ScalarField(b.grid(), std::move(v));
}

ScalarField deviation_field(const ModelState& state, double lambda_signed) {
  const BranchState& b = state.branch(lambda_signed);
  const auto index = *state.lambda().find(lambda_signed);
  const auto ld = log_derivative(b.rho(), state.floor(index));
  const double scale = lambda_signed * lambda_signed / (4.0 * b.mass() * b.mass());
  std::vector<double> d(ld.field.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = scale * ld.field[i] * ld.field[i];
  return ScalarField(b.grid(), std::move(d));
}

ScalarField effective_velocity_field(const ModelState& state) {
  detail::require_canonical(state, "effective_velocity_field");
  const auto forward = velocity_field(state, state.hbar());
  const auto backward = velocity_field(state, -state.hbar());
  return 0.5 * (forward + backward);
}

ScalarField osmotic_velocity_field(const ModelState& state) {
  detail::require_canonical(state, "osmotic_velocity_field");
  const auto& b = state.branches().front();
  const auto ld = log_derivative(b.rho(), state.floor(0));
  return (state.hbar() / (2.0 * b.mass())) * ld.field;
}

ScalarField quantum_potential_field(const ModelState& state) {
  detail::require_canonical(state, "quantum_potential_field");
  const auto& b = state.branches().front();
  const double floor = state.floor(0);
  const auto psi = signed_amplitude(b.rho(), floor).amplitude;
  const auto curvature = second_derivative(psi);
  const double amp_floor = std::sqrt(floor);
  const double scale = -state.hbar() * state.hbar() / (2.0 * b.mass());
  std::vector<double> u(psi.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double denom = std::copysign(std::max(std::abs(psi[i]), amp_floor), psi[i]);
    u[i] = scale * curvature[i] / denom;
  }
  return ScalarField(b.grid(), std::move(u));
}

}  // namespace smq
