#include "smq/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "quadrature_detail.hpp"
#include "smq/identities.hpp"
#include "smq/numerics.hpp"

namespace smq {
namespace {

double moment_on(const ModelState& state, double q0) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& rho = state.branches()[i].rho();
    const Grid1D& g = rho.grid();
    std::vector<double> f(rho.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double d = g.point(k) - q0;
      f[k] = d * d * rho[k];
    }
    total += state.weight(i) * integrate(g, f);
  }
  return total;
}

double score_sum(const ModelState& state, bool lambda_weighted) {
  double total = 0.0;
  const double m = state.mass();
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& b = state.branches()[i];
    double s = detail::score_energy(b.rho(), state.floor(i));
    if (lambda_weighted) s *= b.magnitude() * b.magnitude() / (4.0 * m * m);
    total += state.weight(i) * s;
  }
  return total;
}

void attach_common(VerificationReport& r, const ModelState& state) {
  r.grid = state.grid();
  r.masked_mass = detail::weighted_masked_mass(state);
}

}  // namespace

double position_mean(const ModelState& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& rho = state.branches()[i].rho();
    const Grid1D& g = rho.grid();
    std::vector<double> f(rho.size());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = g.point(k) * rho[k];
    total += state.weight(i) * integrate(g, f);
  }
  return total;
}

double position_second_moment(const ModelState& state, double q0) {
  return std::max(0.0, moment_on(state, q0));
}

Estimate weighted_velocity_deviation(const ModelState& state) {
  const auto e = detail::extrapolate(state, [](const ModelState& s) { return score_sum(s, false); });
  return {std::max(0.0, e.value), e.error_estimate, detail::weighted_masked_mass(state)};
}

Estimate deviation_moment(const ModelState& state) {
  const auto e = detail::extrapolate(state, [](const ModelState& s) { return score_sum(s, true); });
  return {std::max(0.0, e.value), e.error_estimate, detail::weighted_masked_mass(state)};
}

Estimate velocity_variance(const ModelState& state) {
  const auto e = detail::extrapolate(state, [](const ModelState& s) {
    const double m = s.mass();
    double mean = 0.0;
    double square = 0.0;
    for (std::size_t i = 0; i < s.branches().size(); ++i) {
      const auto& b = s.branches()[i];
      const auto pm = detail::phase_moments(b);
      const double score = detail::score_energy(b.rho(), s.floor(i));
      mean += s.weight(i) * pm.mean_gradient / m;
      // the lambda-odd cross term cancels between +|lambda| and -|lambda|
      square += s.weight(i) * (pm.mean_square_gradient / (m * m) +
                               b.magnitude() * b.magnitude() / (4.0 * m * m) * score);
    }
    return square - mean * mean;
  });
  return {std::max(0.0, e.value), e.error_estimate, detail::weighted_masked_mass(state)};
}

VerificationReport uncertainty_product_general(const ModelState& state, double q0,
                                               const Tolerances& tol) {
  const auto moment = detail::extrapolate(state, [q0](const ModelState& s) { return moment_on(s, q0); });
  const auto deviation = weighted_velocity_deviation(state);
  const double lhs = moment.value * deviation.value;
  auto r = make_inequality("uncertainty_product_general", lhs, 1.0, tol.relative);
  attach_common(r, state);
  r.discretization_estimate =
      detail::product_error(moment.value, moment.error_estimate, deviation.value,
                            deviation.error_estimate);
  r.details = {{"q0", q0},
               {"position_second_moment", moment.value},
               {"weighted_velocity_deviation", deviation.value}};
  return r;
}

VerificationReport uncertainty_product_quantum(const ModelState& state, double q0,
                                               const Tolerances& tol) {
  detail::require_canonical(state, "uncertainty_product_quantum");
  const auto moment = detail::extrapolate(state, [q0](const ModelState& s) { return moment_on(s, q0); });
  const auto deviation = deviation_moment(state);
  const double m = state.mass();
  const double bound = state.hbar() * state.hbar() / (4.0 * m * m);
  auto r = make_inequality("uncertainty_product_quantum", moment.value * deviation.value, bound,
                           tol.relative);
  attach_common(r, state);
  r.discretization_estimate =
      detail::product_error(moment.value, moment.error_estimate, deviation.value,
                            deviation.error_estimate);
  r.details = {{"q0", q0},
               {"position_second_moment", moment.value},
               {"velocity_deviation_moment", deviation.value}};
  return r;
}

Q0Sweep q0_optimality_sweep(const ModelState& state, std::span<const double> q0_values) {
  if (q0_values.empty()) throw std::invalid_argument("q0_optimality_sweep: empty q0 list");
  Q0Sweep out;
  out.mean = position_mean(state);
  out.moments.reserve(q0_values.size());
  for (double q0 : q0_values) out.moments.emplace_back(q0, position_second_moment(state, q0));

  std::vector<double> distinct(q0_values.begin(), q0_values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) return out;

  // Least squares for y = c2 x^2 + c1 x + c0 in centered coordinates.
  double xc = 0.0;
  for (const auto& [x, y] : out.moments) xc += x;
  xc /= static_cast<double>(out.moments.size());
  double s[5] = {0, 0, 0, 0, 0};
  double t[3] = {0, 0, 0};
  for (const auto& [x0, y] : out.moments) {
    const double x = x0 - xc;
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      s[k] += p;
      if (k < 3) t[k] += p * y;
      p *= x;
    }
  }
  // Normal equations [[s4 s3 s2][s3 s2 s1][s2 s1 s0]] (c2 c1 c0) = (t2 t1 t0)
  const double a[3][3] = {{s[4], s[3], s[2]}, {s[3], s[2], s[1]}, {s[2], s[1], s[0]}};
  const double b[3] = {t[2], t[1], t[0]};
  const auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(a);
  double c[2];
  for (int col = 0; col < 2; ++col) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = (j == col) ? b[i] : a[i][j];
    c[col] = det3(m) / d;
  }
  if (!(c[0] > 0.0)) return out;
  out.fitted_minimizer = xc - c[1] / (2.0 * c[0]);
  out.minimizer_matches_mean =
      std::abs(*out.fitted_minimizer - out.mean) <= state.grid().spacing();
  return out;
}

VerificationReport uncertainty_chain_report(const ModelState& state, double q0,
                                            const Tolerances& tol) {
  detail::require_canonical(state, "uncertainty_chain_report");
  const double mean = position_mean(state);
  if (std::abs(q0 - mean) > state.grid().spacing()) {
    std::ostringstream msg;
    msg << "uncertainty_chain_report: q0 = " << q0 << " differs from the density mean " << mean
        << " by more than the grid spacing " << state.grid().spacing();
    throw std::invalid_argument(msg.str());
  }
  const auto moment = detail::extrapolate(state, [q0](const ModelState& s) { return moment_on(s, q0); });
  const auto dp = operator_momentum_variance(state);
  const auto osmotic = momentum_variance_decomposition(state, tol).osmotic;
  const double hbar = state.hbar();
  const double bound = hbar * hbar / 4.0;
  const double top = moment.value * dp.value;
  const double middle = moment.value * osmotic.value;

  VerificationReport r;
  r.name = "uncertainty_chain";
  r.kind = CheckKind::inequality;
  r.lhs = top;
  r.bound_or_rhs = bound;
  const double first_slack = top - middle;
  const double second_slack = middle - bound;
  // Each link is judged relative to its own right-hand side.
  r.slack = std::min(first_slack / std::max(std::abs(middle), 1e-300), second_slack / bound);
  r.relative_tolerance = tol.relative;
  r.tolerance = tol.relative;
  r.pass = r.slack >= -r.tolerance;
  attach_common(r, state);
  r.discretization_estimate =
      detail::product_error(moment.value, moment.error_estimate, dp.value, dp.error_estimate);
  r.details = {{"q0", q0},
               {"delta_q", moment.value},
               {"delta_p", dp.value},
               {"delta_q_delta_p", top},
               {"middle_product", middle},
               {"hbar_squared_over_4", bound},
               {"first_link_slack", first_slack},
               {"second_link_slack", second_slack}};
  return r;
}

}  // namespace smq
