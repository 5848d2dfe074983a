#include "smq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smq {

ScalarField derivative(const ScalarField& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  const double inv2h = 1.0 / (2.0 * f.grid().spacing());
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv2h;
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv2h;
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) * inv2h;
  return ScalarField(f.grid(), std::move(d));
}

ScalarField second_derivative(const ScalarField& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  const double h = f.grid().spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2;
  d[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * inv_h2;
  d[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) * inv_h2;
  return ScalarField(f.grid(), std::move(d));
}

namespace {

double simpson_odd(std::span<const double> v, double h) {
  // v.size() is odd and >= 3
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); i += 2) odd += v[i];
  for (std::size_t i = 2; i + 1 < v.size(); i += 2) even += v[i];
  return h / 3.0 * (v.front() + v.back() + 4.0 * odd + 2.0 * even);
}

}  // namespace

double integrate(const Grid1D& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("integrate: value count does not match the grid");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("integrate: non-finite value at index " + std::to_string(i));
    }
  }
  const double h = grid.spacing();
  const std::size_t n = values.size();
  if (n % 2 == 1) return simpson_odd(values, h);
  return simpson_odd(values.first(n - 1), h) + 0.5 * h * (values[n - 2] + values[n - 1]);
}

double integrate(const ScalarField& f) { return integrate(f.grid(), f.values()); }

std::size_t LogDerivative::masked_count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

LogDerivative log_derivative(const ScalarField& rho, double floor) {
  if (!(floor > 0.0)) {
    throw std::invalid_argument("log_derivative: floor must be positive, got " +
                                std::to_string(floor));
  }
  const ScalarField d = derivative(rho);
  std::vector<double> out(rho.size());
  std::vector<bool> mask(rho.size(), false);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    mask[i] = rho[i] < floor;
    out[i] = d[i] / std::max(rho[i], floor);
  }
  return {ScalarField(rho.grid(), std::move(out)), std::move(mask), floor};
}

double masked_mass(const ScalarField& rho, const std::vector<bool>& mask) {
  std::vector<double> masked(rho.size(), 0.0);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (mask[i]) masked[i] = rho[i];
  }
  return std::max(0.0, integrate(rho.grid(), masked));
}

double relative_floor(const ScalarField& rho, double factor) { return factor * rho.max(); }

SignedAmplitude signed_amplitude(const ScalarField& rho, double floor) {
  const Grid1D& grid = rho.grid();
  const std::size_t n = rho.size();
  const double h = grid.spacing();
  const double cutoff = std::sqrt(floor);

  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = std::sqrt(std::max(rho[i], 0.0));

  std::vector<double> nodes;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    if (!(a[i] <= a[i - 1] && a[i] < a[i + 1])) continue;
    if (!(a[i - 2] > cutoff && a[i + 2] > cutoff)) continue;
    const double left_slope = (a[i - 1] - a[i - 2]) / h;
    const double right_slope = (a[i + 2] - a[i + 1]) / h;
    if (left_slope >= 0.0 || right_slope <= 0.0) continue;
    const double left_zero = grid.point(i - 1) - a[i - 1] / left_slope;
    const double right_zero = grid.point(i + 1) - a[i + 1] / right_slope;
    if (std::abs(left_zero - right_zero) >= 0.5 * h) continue;
    if (left_zero < grid.point(i - 1) || left_zero > grid.point(i + 1)) continue;
    nodes.push_back(0.5 * (left_zero + right_zero));
  }

  std::size_t next = 0;
  double sign = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    while (next < nodes.size() && grid.point(i) > nodes[next]) {
      sign = -sign;
      ++next;
    }
    a[i] *= sign;
  }
  return {ScalarField(grid, std::move(a)), std::move(nodes)};
}

double staggered_gradient_energy(const ScalarField& f) {
  const auto v = f.values();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    sum += d * d;
  }
  return sum / f.grid().spacing();
}

EndpointDecay endpoint_decay(const ScalarField& rho, double threshold) {
  const double peak = rho.max();
  EndpointDecay out{0.0, 0.0, false};
  if (!(peak > 0.0)) return out;
  out.left_ratio = std::abs(rho[0]) / peak;
  out.right_ratio = std::abs(rho[rho.size() - 1]) / peak;
  out.ok = out.left_ratio < threshold && out.right_ratio < threshold;
  return out;
}

Extrapolated richardson(double fine, std::optional<double> coarse) {
  if (!coarse) return {fine, fine, std::nullopt};
  return {(4.0 * fine - *coarse) / 3.0, fine, std::abs(fine - *coarse) / 3.0};
}

}  // namespace smq
