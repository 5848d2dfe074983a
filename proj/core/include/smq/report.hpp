#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smq/grid.hpp"

namespace smq {

enum class CheckKind { inequality, identity };

const char* to_string(CheckKind kind) noexcept;

/// Outcome of one inequality or identity check.
///
/// Inequalities: slack = lhs - bound, pass iff slack >= -tolerance.
/// Identities:   slack = |lhs - rhs|, pass iff slack <= tolerance.
/// `tolerance` is absolute; `relative_tolerance` is what it was derived from.
struct VerificationReport {
  std::string name;
  CheckKind kind = CheckKind::inequality;
  double lhs = 0.0;
  double bound_or_rhs = 0.0;
  double slack = 0.0;
  std::optional<double> discretization_estimate;
  double masked_mass = 0.0;
  double tolerance = 0.0;
  double relative_tolerance = 0.0;
  bool pass = false;
  std::optional<Grid1D> grid;
  /// Additional named values (chain links, boundary residuals, ...), in insertion order.
  std::vector<std::pair<std::string, double>> details;

  std::optional<double> detail(std::string_view key) const;
};

/// Absolute tolerance is relative * max(|scale|, tiny).
VerificationReport make_inequality(std::string name, double lhs, double bound,
                                   double relative_tolerance);
VerificationReport make_identity(std::string name, double lhs, double rhs,
                                 double relative_tolerance);
/// Identity against an absolute tolerance (used when rhs is zero).
VerificationReport make_absolute_identity(std::string name, double lhs, double rhs,
                                          double absolute_tolerance);

/// Tolerances carried into every report.
struct Tolerances {
  double relative = 1e-6;
  double quantum_potential = 1e-5;
  double mean_zero = 1e-8;
};

}  // namespace smq
