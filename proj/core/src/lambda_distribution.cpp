#include "smq/lambda_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace smq {
namespace {

bool same_magnitude(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

}  // namespace

LambdaDistribution::LambdaDistribution(std::vector<LambdaAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("LambdaDistribution: no atoms");
  double total = 0.0;
  for (const auto& atom : atoms_) {
    if (!(atom.magnitude > 0.0) || !std::isfinite(atom.magnitude)) {
      throw std::invalid_argument("LambdaDistribution: magnitudes must be positive and finite, got " +
                                  std::to_string(atom.magnitude));
    }
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      throw std::invalid_argument("LambdaDistribution: weights must be positive, got " +
                                  std::to_string(atom.weight));
    }
    total += atom.weight;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "LambdaDistribution: weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const LambdaAtom& a, const LambdaAtom& b) { return a.magnitude < b.magnitude; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (same_magnitude(atoms_[i - 1].magnitude, atoms_[i].magnitude)) {
      throw std::invalid_argument("LambdaDistribution: duplicate magnitude " +
                                  std::to_string(atoms_[i].magnitude));
    }
  }
}

LambdaDistribution LambdaDistribution::canonical(double hbar) {
  return LambdaDistribution({{hbar, 1.0}});
}

LambdaDistribution LambdaDistribution::symmetric_spread(double hbar, double spread) {
  if (spread == 0.0) return canonical(hbar);
  if (!(spread > 0.0 && spread < 1.0)) {
    throw std::invalid_argument("symmetric_spread: spread must lie in [0, 1), got " +
                                std::to_string(spread));
  }
  return LambdaDistribution({{hbar * (1.0 - spread), 0.5}, {hbar * (1.0 + spread), 0.5}});
}

bool LambdaDistribution::is_canonical(double hbar) const noexcept {
  return atoms_.size() == 1 && same_magnitude(atoms_.front().magnitude, hbar);
}

std::optional<std::size_t> LambdaDistribution::find(double lambda) const noexcept {
  const double m = std::abs(lambda);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (same_magnitude(atoms_[i].magnitude, m)) return i;
  }
  return std::nullopt;
}

std::vector<SignedLambda> LambdaDistribution::signed_atoms() const {
  std::vector<SignedLambda> out;
  out.reserve(2 * atoms_.size());
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
    out.push_back({-it->magnitude, 0.5 * it->weight});
  }
  for (const auto& atom : atoms_) out.push_back({atom.magnitude, 0.5 * atom.weight});
  return out;
}

std::string LambdaDistribution::describe_magnitudes() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i) out << ", ";
    out << atoms_[i].magnitude;
  }
  return out.str();
}

double LambdaDistribution::second_moment() const noexcept {
  double s = 0.0;
  for (const auto& atom : atoms_) s += atom.weight * atom.magnitude * atom.magnitude;
  return s;
}

}  // namespace smq
