#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "smq/field.hpp"
#include "smq/lambda_distribution.hpp"

namespace smq {

/// Closed-form tag set by the state catalog when a branch density is
/// sqrt(a/pi) exp(-a (q - center)^2).
struct GaussianProfile {
  double a;
  double center;
};

/// One |lambda| branch: density rho(q, |lambda|) and phase S(q, lambda).
class BranchState {
 public:
  static constexpr double kNormalizationTolerance = 1e-8;

  /// Validates rho >= 0, unit normalization, endpoint decay, positive mass and
  /// magnitude, and that rho and phase share a grid.
  BranchState(double magnitude, ScalarField rho, ScalarField phase, double mass,
              std::optional<GaussianProfile> gaussian = std::nullopt);

  double magnitude() const noexcept { return magnitude_; }
  const ScalarField& rho() const noexcept { return rho_; }
  const ScalarField& phase() const noexcept { return phase_; }
  double mass() const noexcept { return mass_; }
  const Grid1D& grid() const noexcept { return rho_.grid(); }
  const std::optional<GaussianProfile>& gaussian() const noexcept { return gaussian_; }

  std::optional<BranchState> coarsened() const;

 private:
  struct Unchecked {};
  BranchState(Unchecked, double magnitude, ScalarField rho, ScalarField phase, double mass,
              std::optional<GaussianProfile> gaussian);

  double magnitude_;
  ScalarField rho_;
  ScalarField phase_;
  double mass_;
  std::optional<GaussianProfile> gaussian_;
};

/// The full ensemble Omega(q, lambda) = rho(q, |lambda|) P(lambda), one branch
/// per atom of the lambda distribution. Immutable after construction.
class ModelState {
 public:
  /// Branches are matched to atoms by magnitude; all must share grid and mass.
  ModelState(LambdaDistribution lambda, std::vector<BranchState> branches, double hbar,
             double floor_factor = 1e-12);

  const LambdaDistribution& lambda() const noexcept { return lambda_; }
  /// Branch i belongs to lambda().atoms()[i].
  std::span<const BranchState> branches() const noexcept { return branches_; }
  const Grid1D& grid() const noexcept { return branches_.front().grid(); }
  double mass() const noexcept { return branches_.front().mass(); }
  double hbar() const noexcept { return hbar_; }
  double floor_factor() const noexcept { return floor_factor_; }

  bool is_canonical() const noexcept { return lambda_.is_canonical(hbar_); }

  /// Branch for |lambda|; throws std::invalid_argument listing the known magnitudes.
  const BranchState& branch(double lambda) const;
  double weight(std::size_t branch_index) const noexcept {
    return lambda_.atoms()[branch_index].weight;
  }

  /// Node floor for branch i: floor_factor * max(rho_i).
  double floor(std::size_t branch_index) const;

  /// Same state on the every-other-point grid, or empty if too coarse.
  std::optional<ModelState> coarsened() const;

 private:
  struct Unchecked {};
  ModelState(Unchecked, LambdaDistribution lambda, std::vector<BranchState> branches, double hbar,
             double floor_factor);

  LambdaDistribution lambda_;
  std::vector<BranchState> branches_;
  double hbar_;
  double floor_factor_;
};

}  // namespace smq
