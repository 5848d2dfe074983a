#include "smq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smq {

Grid1D::Grid1D(double q_min, double q_max, std::size_t n_points)
    : q_min_(q_min), q_max_(q_max), n_points_(n_points), spacing_(0.0) {
  if (!std::isfinite(q_min) || !std::isfinite(q_max) || !(q_max > q_min)) {
    std::ostringstream msg;
    msg << "Grid1D: need finite bounds with q_max > q_min, got [" << q_min << ", " << q_max
        << "]";
    throw std::invalid_argument(msg.str());
  }
  if (n_points < kMinPoints) {
    std::ostringstream msg;
    msg << "Grid1D: need at least " << kMinPoints << " points, got " << n_points;
    throw std::invalid_argument(msg.str());
  }
  spacing_ = (q_max - q_min) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> q(n_points_);
  for (std::size_t i = 0; i < n_points_; ++i) q[i] = point(i);
  return q;
}

std::optional<Grid1D> Grid1D::coarsened() const {
  const std::size_t last_even = (n_points_ - 1) - ((n_points_ - 1) % 2);
  const std::size_t n = last_even / 2 + 1;
  if (n < kMinPoints) return std::nullopt;
  return Grid1D(q_min_, point(last_even), n);
}

std::size_t Grid1D::cell_index(double q) const noexcept {
  const double t = std::floor((q - q_min_) / spacing_);
  if (!(t > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(t), n_points_ - 2);
}

}  // namespace smq
