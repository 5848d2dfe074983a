#include "smq/velocity_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "smq/numerics.hpp"

namespace smq {

double VelocityDistribution::variance() const noexcept {
  double v = 0.0;
  for (const auto& c : components) v += c.weight * c.variance;
  return v;
}

double VelocityDistribution::pdf(double v) const noexcept {
  double p = 0.0;
  for (const auto& c : components) {
    p += c.weight * std::exp(-v * v / (2.0 * c.variance)) /
         std::sqrt(2.0 * std::numbers::pi * c.variance);
  }
  return p;
}

double VelocityDistribution::cdf(double v) const noexcept {
  double p = 0.0;
  for (const auto& c : components) {
    p += c.weight * 0.5 * std::erfc(-v / std::sqrt(2.0 * c.variance));
  }
  return p;
}

VelocityDistribution velocity_distribution_analytic(const ModelState& state,
                                                    std::size_t n_points) {
  VelocityDistribution out;
  const double m = state.mass();
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& b = state.branches()[i];
    if (!b.gaussian()) {
      throw std::invalid_argument(
          "velocity_distribution_analytic: branch |lambda| = " + std::to_string(b.magnitude()) +
          " is not a catalog Gaussian; no closed form");
    }
    if (!b.phase().all_zero()) {
      throw std::invalid_argument(
          "velocity_distribution_analytic: branch |lambda| = " + std::to_string(b.magnitude()) +
          " has a nonzero phase; no closed form");
    }
    const double a = b.gaussian()->a;
    const double lam = b.magnitude();
    out.components.push_back({state.weight(i), a * lam * lam / (2.0 * m * m)});
  }

  double widest = 0.0;
  for (const auto& c : out.components) widest = std::max(widest, c.variance);
  const double half_width = 8.0 * std::sqrt(widest);
  const Grid1D grid(-half_width, half_width, std::max(n_points, Grid1D::kMinPoints));
  out.velocities = grid.points();
  out.density.resize(out.velocities.size());
  for (std::size_t k = 0; k < out.velocities.size(); ++k) out.density[k] = out.pdf(out.velocities[k]);
  const double norm = integrate(grid, out.density);
  for (double& d : out.density) d /= norm;
  return out;
}

}  // namespace smq
