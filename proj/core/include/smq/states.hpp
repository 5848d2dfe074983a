#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smq/grid.hpp"
#include "smq/lambda_distribution.hpp"
#include "smq/model_state.hpp"
#include "smq/numerics.hpp"

namespace smq {

enum class StateKind {
  gaussian_ground,
  harmonic_excited,
  boosted_gaussian,
  two_gaussian,
  chirped_gaussian,
  tabulated,
};

const char* to_string(StateKind kind) noexcept;
std::optional<StateKind> parse_state_kind(std::string_view name) noexcept;

/// Density and phase read from a tabulated-state file.
struct TabulatedState {
  Grid1D grid;
  std::vector<double> rho;
  std::vector<double> phase;
  double mass;
  double hbar;
  /// Factor applied to rho to make it integrate to one (1 when already normalized).
  double normalization_correction = 1.0;
};

/// Parses {"grid": {"q_min", "q_max", "n_points"}, "rho": [...], "phase": [...],
/// "mass", "hbar"}. rho must integrate to 1 within 1e-6; it is then renormalized.
/// Throws std::invalid_argument on malformed input.
TabulatedState parse_tabulated_state(std::string_view json_text);
TabulatedState load_tabulated_state(const std::filesystem::path& path);

/// Parameters of a catalog state. Every branch |lambda_i| uses the oscillator
/// width a_i = mass * omega / |lambda_i|.
struct StateSpec {
  StateKind kind = StateKind::gaussian_ground;
  double omega = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  double center = 0.0;
  int level = 0;                // harmonic_excited
  double p0 = 0.0;              // boosted_gaussian: S = p0 q
  double separation = 4.0;      // two_gaussian: distance between the two centers
  int relative_sign = 1;        // two_gaussian: +1 or -1
  double amplitude_ratio = 1.0; // two_gaussian: amplitude of the left component
  double chirp = 0.0;           // chirped_gaussian: S = chirp (q - center)^2
  std::optional<Grid1D> grid;   // default_grid() when empty
  /// Required for StateKind::tabulated; mass and hbar then come from the file.
  std::shared_ptr<const TabulatedState> tabulated;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  static StateSpec gaussian_ground(double omega = 1.0, double mass = 1.0, double hbar = 1.0);
  static StateSpec harmonic_excited(int level, double omega = 1.0);
  static StateSpec boosted_gaussian(double p0, double omega = 1.0);
  static StateSpec two_gaussian(double separation, int relative_sign, double omega = 1.0);
  static StateSpec chirped_gaussian(double chirp, double omega = 1.0);
};

inline constexpr std::size_t kDefaultGridPoints = 2001;
inline constexpr double kDefaultGridHalfWidthSigmas = 8.0;

/// center +/- (offset + 8 effective standard deviations of the widest branch), 2001 points.
Grid1D default_grid(const StateSpec& spec, const LambdaDistribution& lambda);

/// Builds the ensemble; throws std::invalid_argument if the grid is too narrow
/// for the state's decay (the message suggests bounds).
ModelState build(const StateSpec& spec, const LambdaDistribution& lambda,
                 double floor_factor = kDefaultFloorFactor);

/// Same, with the two-point distribution at spec.hbar (or the file's hbar).
ModelState build(const StateSpec& spec);

/// Closed-form reference values.
struct AnalyticReferences {
  double sigma_q;                 // variance of q under Omega
  double sigma_qdot;              // variance of qdot under Omega
  double product;                 // sigma_q * sigma_qdot
  double fisher;                  // sum_i w_i * 2 a_i
  double mean_quantum_potential;  // sum_i w_i lambda_i^2 a_i / (4 m)
};

/// Available for gaussian_ground and boosted_gaussian; empty otherwise.
std::optional<AnalyticReferences> analytic_references(const StateSpec& spec,
                                                      const LambdaDistribution& lambda);

}  // namespace smq
