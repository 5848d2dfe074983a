#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace smq {

/// Uniform grid on [q_min, q_max]. Point i sits at q_min + i * spacing().
class Grid1D {
 public:
  static constexpr std::size_t kMinPoints = 16;

  /// Throws std::invalid_argument unless q_max > q_min and n_points >= kMinPoints.
  Grid1D(double q_min, double q_max, std::size_t n_points);

  double q_min() const noexcept { return q_min_; }
  double q_max() const noexcept { return q_max_; }
  std::size_t size() const noexcept { return n_points_; }
  double spacing() const noexcept { return spacing_; }

  double point(std::size_t i) const noexcept {
    return q_min_ + static_cast<double>(i) * spacing_;
  }
  std::vector<double> points() const;

  /// Every other point of this grid (indices 0, 2, 4, ...). When the point
  /// count is even the last point is dropped. Empty if fewer than kMinPoints
  /// would remain.
  std::optional<Grid1D> coarsened() const;

  /// Index i of the cell [point(i), point(i+1)] containing q, clamped to the grid.
  std::size_t cell_index(double q) const noexcept;

  bool contains(double q) const noexcept { return q >= q_min_ && q <= q_max_; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double q_min_;
  double q_max_;
  std::size_t n_points_;
  double spacing_;
};

}  // namespace smq
