#include "smq/report.hpp"

#include <algorithm>
#include <cmath>

namespace smq {
namespace {

constexpr double kTinyScale = 1e-300;

}  // namespace

const char* to_string(CheckKind kind) noexcept {
  return kind == CheckKind::inequality ? "inequality" : "identity";
}

std::optional<double> VerificationReport::detail(std::string_view key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

VerificationReport make_inequality(std::string name, double lhs, double bound,
                                   double relative_tolerance) {
  VerificationReport r;
  r.name = std::move(name);
  r.kind = CheckKind::inequality;
  r.lhs = lhs;
  r.bound_or_rhs = bound;
  r.slack = lhs - bound;
  r.relative_tolerance = relative_tolerance;
  r.tolerance = relative_tolerance * std::max(std::abs(bound), kTinyScale);
  r.pass = r.slack >= -r.tolerance;
  return r;
}

VerificationReport make_identity(std::string name, double lhs, double rhs,
                                 double relative_tolerance) {
  VerificationReport r;
  r.name = std::move(name);
  r.kind = CheckKind::identity;
  r.lhs = lhs;
  r.bound_or_rhs = rhs;
  r.slack = std::abs(lhs - rhs);
  r.relative_tolerance = relative_tolerance;
  r.tolerance = relative_tolerance * std::max(std::abs(rhs), kTinyScale);
  r.pass = r.slack <= r.tolerance;
  return r;
}

VerificationReport make_absolute_identity(std::string name, double lhs, double rhs,
                                          double absolute_tolerance) {
  VerificationReport r;
  r.name = std::move(name);
  r.kind = CheckKind::identity;
  r.lhs = lhs;
  r.bound_or_rhs = rhs;
  r.slack = std::abs(lhs - rhs);
  r.relative_tolerance = 0.0;
  r.tolerance = absolute_tolerance;
  r.pass = r.slack <= r.tolerance;
  return r;
}

}  // namespace smq
