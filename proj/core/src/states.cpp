#include "smq/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace smq {
namespace {

constexpr int kMaxLevel = 100;

/// Normalized Hermite function phi_n(x) by the stable three-term recurrence.
double hermite_function(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double width_for(const StateSpec& spec, double magnitude) { return spec.mass * spec.omega / magnitude; }

bool is_gaussian_kind(StateKind k) {
  return k == StateKind::gaussian_ground || k == StateKind::boosted_gaussian ||
         k == StateKind::chirped_gaussian;
}

std::vector<double> amplitude_profile(const StateSpec& spec, double a, const Grid1D& grid) {
  std::vector<double> psi(grid.size());
  const double c = spec.center;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double q = grid.point(i) - c;
    switch (spec.kind) {
      case StateKind::harmonic_excited:
        psi[i] = hermite_function(spec.level, std::sqrt(a) * q);
        break;
      case StateKind::two_gaussian: {
        const double d = 0.5 * spec.separation;
        psi[i] = std::exp(-0.5 * a * (q - d) * (q - d)) +
                 spec.relative_sign * spec.amplitude_ratio * std::exp(-0.5 * a * (q + d) * (q + d));
        break;
      }
      default:
        psi[i] = std::exp(-0.5 * a * q * q);
        break;
    }
  }
  return psi;
}

std::vector<double> phase_profile(const StateSpec& spec, const Grid1D& grid) {
  std::vector<double> s(grid.size(), 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double q = grid.point(i);
    if (spec.kind == StateKind::boosted_gaussian) s[i] = spec.p0 * q;
    if (spec.kind == StateKind::chirped_gaussian) s[i] = spec.chirp * (q - spec.center) * (q - spec.center);
  }
  return s;
}

std::string describe(const Grid1D& g) {
  std::ostringstream out;
  out << "[" << g.q_min() << ", " << g.q_max() << "] with " << g.size() << " points";
  return out.str();
}

}  // namespace

const char* to_string(StateKind kind) noexcept {
  switch (kind) {
    case StateKind::gaussian_ground: return "gaussian_ground";
    case StateKind::harmonic_excited: return "harmonic_excited";
    case StateKind::boosted_gaussian: return "boosted_gaussian";
    case StateKind::two_gaussian: return "two_gaussian";
    case StateKind::chirped_gaussian: return "chirped_gaussian";
    case StateKind::tabulated: return "tabulated";
  }
  return "unknown";
}

std::optional<StateKind> parse_state_kind(std::string_view name) noexcept {
  for (auto k : {StateKind::gaussian_ground, StateKind::harmonic_excited, StateKind::boosted_gaussian,
                 StateKind::two_gaussian, StateKind::chirped_gaussian, StateKind::tabulated}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

void StateSpec::validate() const {
  const auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("state: ") + what + " must be positive and finite");
    }
  };
  const auto finite = [](double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("state: ") + what + " must be finite");
  };
  if (kind == StateKind::tabulated) {
    if (!tabulated) throw std::invalid_argument("state: tabulated kind needs tabulated data");
    return;
  }
  positive(omega, "omega");
  positive(mass, "mass");
  positive(hbar, "hbar");
  finite(center, "center");
  finite(p0, "p0");
  finite(chirp, "chirp");
  if (level < 0 || level > kMaxLevel) {
    throw std::invalid_argument("state: level must lie in [0, " + std::to_string(kMaxLevel) + "]");
  }
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw std::invalid_argument("state: separation must be >= 0");
  }
  if (relative_sign != 1 && relative_sign != -1) {
    throw std::invalid_argument("state: relative_sign must be +1 or -1");
  }
  positive(amplitude_ratio, "amplitude_ratio");
  if (kind == StateKind::two_gaussian && relative_sign == -1 && separation == 0.0 &&
      amplitude_ratio == 1.0) {
    throw std::invalid_argument("state: two_gaussian with zero separation and sign -1 vanishes");
  }
}

StateSpec StateSpec::gaussian_ground(double omega, double mass, double hbar) {
  StateSpec s;
  s.kind = StateKind::gaussian_ground;
  s.omega = omega;
  s.mass = mass;
  s.hbar = hbar;
  return s;
}

StateSpec StateSpec::harmonic_excited(int level, double omega) {
  StateSpec s;
  s.kind = StateKind::harmonic_excited;
  s.level = level;
  s.omega = omega;
  return s;
}

StateSpec StateSpec::boosted_gaussian(double p0, double omega) {
  StateSpec s;
  s.kind = StateKind::boosted_gaussian;
  s.p0 = p0;
  s.omega = omega;
  return s;
}

StateSpec StateSpec::two_gaussian(double separation, int relative_sign, double omega) {
  StateSpec s;
  s.kind = StateKind::two_gaussian;
  s.separation = separation;
  s.relative_sign = relative_sign;
  s.omega = omega;
  return s;
}

StateSpec StateSpec::chirped_gaussian(double chirp, double omega) {
  StateSpec s;
  s.kind = StateKind::chirped_gaussian;
  s.chirp = chirp;
  s.omega = omega;
  return s;
}

Grid1D default_grid(const StateSpec& spec, const LambdaDistribution& lambda) {
  if (spec.kind == StateKind::tabulated) {
    if (!spec.tabulated) throw std::invalid_argument("default_grid: tabulated state without data");
    return spec.tabulated->grid;
  }
  double widest = 0.0;
  for (const auto& atom : lambda.atoms()) widest = std::max(widest, atom.magnitude);
  const double a_min = width_for(spec, widest);
  const double level = spec.kind == StateKind::harmonic_excited ? spec.level : 0;
  const double sigma = std::sqrt((2.0 * level + 1.0) / (2.0 * a_min));
  const double offset = spec.kind == StateKind::two_gaussian ? 0.5 * spec.separation : 0.0;
  const double half = offset + kDefaultGridHalfWidthSigmas * sigma;
  return Grid1D(spec.center - half, spec.center + half, kDefaultGridPoints);
}

ModelState build(const StateSpec& spec, const LambdaDistribution& lambda, double floor_factor) {
  spec.validate();
  if (spec.kind == StateKind::tabulated) {
    const TabulatedState& t = *spec.tabulated;
    if (spec.grid && !(*spec.grid == t.grid)) {
      throw std::invalid_argument("build: requested grid " + describe(*spec.grid) +
                                  " differs from the tabulated grid " + describe(t.grid) +
                                  "; tabulated states are never interpolated");
    }
    std::vector<BranchState> branches;
    for (const auto& atom : lambda.atoms()) {
      branches.emplace_back(atom.magnitude, ScalarField(t.grid, t.rho), ScalarField(t.grid, t.phase),
                            t.mass);
    }
    return ModelState(lambda, std::move(branches), t.hbar, floor_factor);
  }

  const Grid1D grid = spec.grid.value_or(default_grid(spec, lambda));
  std::vector<BranchState> branches;
  branches.reserve(lambda.size());
  for (const auto& atom : lambda.atoms()) {
    const double a = width_for(spec, atom.magnitude);
    const auto psi = amplitude_profile(spec, a, grid);
    std::vector<double> rho(psi.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = psi[i] * psi[i];
    const double norm = integrate(grid, rho);
    if (!(norm > 0.0)) throw std::invalid_argument("build: state density vanishes on the grid");
    for (double& r : rho) r /= norm;

    ScalarField density(grid, std::move(rho));
    const auto decay = endpoint_decay(density);
    if (!decay.ok) {
      const Grid1D suggested = default_grid(spec, lambda);
      std::ostringstream msg;
      msg << "build: grid " << describe(grid) << " is too narrow for " << to_string(spec.kind)
          << " (rho/max = " << decay.left_ratio << " at q_min, " << decay.right_ratio
          << " at q_max; need < " << kEndpointThreshold << "); suggested grid "
          << describe(suggested);
      throw std::invalid_argument(msg.str());
    }
    std::optional<GaussianProfile> tag;
    if (is_gaussian_kind(spec.kind) ||
        (spec.kind == StateKind::harmonic_excited && spec.level == 0)) {
      tag = GaussianProfile{a, spec.center};
    }
    branches.emplace_back(atom.magnitude, std::move(density),
                          ScalarField(grid, phase_profile(spec, grid)), spec.mass, tag);
  }
  return ModelState(lambda, std::move(branches), spec.hbar, floor_factor);
}

ModelState build(const StateSpec& spec) {
  const double hbar =
      spec.kind == StateKind::tabulated && spec.tabulated ? spec.tabulated->hbar : spec.hbar;
  return build(spec, LambdaDistribution::canonical(hbar));
}

std::optional<AnalyticReferences> analytic_references(const StateSpec& spec,
                                                      const LambdaDistribution& lambda) {
  if (spec.kind != StateKind::gaussian_ground && spec.kind != StateKind::boosted_gaussian) {
    return std::nullopt;
  }
  spec.validate();
  const double m = spec.mass;
  AnalyticReferences r{0.0, 0.0, 0.0, 0.0, 0.0};
  for (const auto& atom : lambda.atoms()) {
    const double a = width_for(spec, atom.magnitude);
    const double lam2 = atom.magnitude * atom.magnitude;
    r.sigma_q += atom.weight / (2.0 * a);
    r.sigma_qdot += atom.weight * a * lam2 / (2.0 * m * m);
    r.fisher += atom.weight * 2.0 * a;
    r.mean_quantum_potential += atom.weight * lam2 * a / (4.0 * m);
  }
  r.product = r.sigma_q * r.sigma_qdot;
  return r;
}

}  // namespace smq
