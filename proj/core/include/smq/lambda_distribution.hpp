#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace smq {

/// One magnitude |lambda| of the multiplier. It stands for the pair
/// +|lambda| and -|lambda|, each carrying weight / 2.
struct LambdaAtom {
  double magnitude;
  double weight;
};

/// A signed multiplier value with its probability.
struct SignedLambda {
  double value;
  double probability;
};

/// Unbiased discrete distribution of the multiplier lambda. Symmetry
/// P(lambda) = P(-lambda) is structural: a pair shares one stored weight.
class LambdaDistribution {
 public:
  static constexpr double kWeightSumTolerance = 1e-12;

  /// Throws std::invalid_argument for an empty list, non-positive magnitudes
  /// or weights, duplicate magnitudes, or weights not summing to one.
  explicit LambdaDistribution(std::vector<LambdaAtom> atoms);

  /// The two-point distribution P = delta(lambda + hbar)/2 + delta(lambda - hbar)/2.
  static LambdaDistribution canonical(double hbar);

  /// Two equal-weight atoms at hbar * (1 - spread) and hbar * (1 + spread).
  /// spread == 0 yields canonical(hbar).
  static LambdaDistribution symmetric_spread(double hbar, double spread);

  std::span<const LambdaAtom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  bool is_canonical(double hbar) const noexcept;

  /// Index of the atom whose magnitude matches |lambda| to 1e-12 relative.
  std::optional<std::size_t> find(double lambda) const noexcept;

  /// All signed atoms in ascending order of value.
  std::vector<SignedLambda> signed_atoms() const;

  /// "0.9, 1.1" style listing used in diagnostics.
  std::string describe_magnitudes() const;

  /// sum_i w_i * magnitude_i^2
  double second_moment() const noexcept;

 private:
  std::vector<LambdaAtom> atoms_;
};

}  // namespace smq
