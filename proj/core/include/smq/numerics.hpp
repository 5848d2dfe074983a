#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smq/field.hpp"
#include "smq/grid.hpp"

namespace smq {

/// First derivative: central differences inside, second-order one-sided
/// three-point stencils at both ends.
ScalarField derivative(const ScalarField& f);

/// Second derivative: three-point stencil inside, second-order one-sided
/// four-point stencils at both ends.
ScalarField second_derivative(const ScalarField& f);

/// Composite Simpson rule for an odd point count. For an even count, Simpson
/// over the first n-2 intervals plus the trapezoid rule on the last one.
double integrate(const ScalarField& f);
double integrate(const Grid1D& grid, std::span<const double> values);

/// d_q rho / max(rho, floor). `mask[i]` is set where rho[i] < floor.
struct LogDerivative {
  ScalarField field;
  std::vector<bool> mask;
  double floor;

  std::size_t masked_count() const;
};

/// Throws std::invalid_argument when floor <= 0.
LogDerivative log_derivative(const ScalarField& rho, double floor);

/// Probability mass of rho carried by masked points.
double masked_mass(const ScalarField& rho, const std::vector<bool>& mask);

inline constexpr double kDefaultFloorFactor = 1e-12;

/// factor * max(rho); the default node floor.
double relative_floor(const ScalarField& rho, double factor = kDefaultFloorFactor);

/// sqrt(rho) with its sign flipped across every simple node, so the result is
/// smooth where sqrt(rho) has a kink. `nodes` holds the estimated node positions.
struct SignedAmplitude {
  ScalarField amplitude;
  std::vector<double> nodes;
};

/// A node is a local minimum of sqrt(rho) where straight-line extrapolations
/// of the two neighbouring flanks meet zero at the same place (within h/2).
/// Points below sqrt(floor) are never treated as nodes.
SignedAmplitude signed_amplitude(const ScalarField& rho, double floor);

/// int (f')^2 dq from forward differences on cell midpoints.
double staggered_gradient_energy(const ScalarField& f);

/// rho at both end points relative to max(rho).
struct EndpointDecay {
  double left_ratio;
  double right_ratio;
  bool ok;
};

inline constexpr double kEndpointThreshold = 1e-10;

EndpointDecay endpoint_decay(const ScalarField& rho, double threshold = kEndpointThreshold);

/// Result of combining a second-order quantity on grids h and 2h.
struct Extrapolated {
  double value;
  double fine;
  /// |fine - coarse| / 3, the leading error of `fine`; empty without a coarse value.
  std::optional<double> error_estimate;
};

Extrapolated richardson(double fine, std::optional<double> coarse);

}  // namespace smq
