#include "smq/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smq {
namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b, const char* op) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument(std::string("ScalarField ") + op + ": grids differ");
  }
}

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return ScalarField(a.grid(), std::move(out));
}

}  // namespace

ScalarField::ScalarField(Grid1D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream msg;
    msg << "ScalarField: " << values_.size() << " values for a grid of " << grid_.size()
        << " points";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "ScalarField: non-finite value " << values_[i] << " at index " << i
          << " (q = " << grid_.point(i) << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

ScalarField ScalarField::constant(const Grid1D& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double ScalarField::interpolate(double q) const noexcept {
  if (q <= grid_.q_min()) return values_.front();
  if (q >= grid_.point(grid_.size() - 1)) return values_.back();
  const std::size_t i = grid_.cell_index(q);
  const double t = (q - grid_.point(i)) / grid_.spacing();
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

std::optional<ScalarField> ScalarField::coarsened() const {
  auto coarse = grid_.coarsened();
  if (!coarse) return std::nullopt;
  std::vector<double> out(coarse->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[2 * i];
  return ScalarField(*coarse, std::move(out));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "+");
  return zip(a, b, [](double x, double y) { return x + y; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "-");
  return zip(a, b, [](double x, double y) { return x - y; });
}

ScalarField operator*(double s, const ScalarField& f) {
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v *= s;
  return ScalarField(f.grid(), std::move(out));
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b, "multiply");
  return zip(a, b, [](double x, double y) { return x * y; });
}

}  // namespace smq
