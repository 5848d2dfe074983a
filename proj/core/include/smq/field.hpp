#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "smq/grid.hpp"

namespace smq {

/// Real values sampled on every point of a Grid1D. All values are finite.
class ScalarField {
 public:
  /// Throws std::invalid_argument on a length mismatch or a non-finite value;
  /// the message names the offending index.
  ScalarField(Grid1D grid, std::vector<double> values);

  template <class Fn>
  static ScalarField sample(const Grid1D& grid, Fn&& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = fn(grid.point(i));
    return ScalarField(grid, std::move(values));
  }

  static ScalarField constant(const Grid1D& grid, double value);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double max() const;
  double min() const;
  double max_abs() const;
  bool all_zero() const;

  /// Linear interpolation; q outside the grid is clamped to the end values.
  double interpolate(double q) const noexcept;

  /// Values at every other grid point, matching Grid1D::coarsened().
  std::optional<ScalarField> coarsened() const;

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(double s, const ScalarField& f);
  friend ScalarField operator*(const ScalarField& f, double s) { return s * f; }

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

/// Pointwise product. Grids must match.
ScalarField multiply(const ScalarField& a, const ScalarField& b);

}  // namespace smq
