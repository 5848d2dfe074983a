#pragma once

#include <cstddef>
#include <vector>

#include "smq/model_state.hpp"

namespace smq {

/// Closed-form distribution of qdot for a state whose branches are all
/// Gaussian with S == 0: qdot = -a lambda (q - center) / m on each branch,
/// so each atom contributes N(0, a_i lambda_i^2 / (2 m^2)) with weight w_i.
struct VelocityDistribution {
  struct Component {
    double weight;
    double variance;
  };

  std::vector<Component> components;
  std::vector<double> velocities;
  /// Density on `velocities`, normalized numerically.
  std::vector<double> density;

  double variance() const noexcept;
  double pdf(double v) const noexcept;
  double cdf(double v) const noexcept;
};

/// Throws std::invalid_argument when a branch is not catalog-tagged Gaussian
/// or carries a nonzero phase.
VelocityDistribution velocity_distribution_analytic(const ModelState& state,
                                                    std::size_t n_points = 2001);

}  // namespace smq
