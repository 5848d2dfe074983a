#include "smq/model_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "smq/numerics.hpp"

namespace smq {

BranchState::BranchState(double magnitude, ScalarField rho, ScalarField phase, double mass,
                         std::optional<GaussianProfile> gaussian)
    : magnitude_(magnitude),
      rho_(std::move(rho)),
      phase_(std::move(phase)),
      mass_(mass),
      gaussian_(gaussian) {
  if (!(magnitude_ > 0.0)) {
    throw std::invalid_argument("BranchState: |lambda| must be positive");
  }
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) {
    throw std::invalid_argument("BranchState: mass must be positive");
  }
  if (!(rho_.grid() == phase_.grid())) {
    throw std::invalid_argument("BranchState: density and phase grids differ");
  }
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (rho_[i] < 0.0) {
      std::ostringstream msg;
      msg << "BranchState: negative density " << rho_[i] << " at index " << i;
      throw std::invalid_argument(msg.str());
    }
  }
  const double norm = integrate(rho_);
  if (std::abs(norm - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "BranchState: density integrates to " << norm << ", expected 1 within "
        << kNormalizationTolerance;
    throw std::invalid_argument(msg.str());
  }
  const auto decay = endpoint_decay(rho_);
  if (!decay.ok) {
    std::ostringstream msg;
    msg << "BranchState: density does not vanish at the grid ends (rho/max = "
        << decay.left_ratio << " at q_min = " << rho_.grid().q_min() << ", "
        << decay.right_ratio << " at q_max = " << rho_.grid().q_max() << "; need < "
        << kEndpointThreshold << ")";
    throw std::invalid_argument(msg.str());
  }
}

BranchState::BranchState(Unchecked, double magnitude, ScalarField rho, ScalarField phase,
                         double mass, std::optional<GaussianProfile> gaussian)
    : magnitude_(magnitude),
      rho_(std::move(rho)),
      phase_(std::move(phase)),
      mass_(mass),
      gaussian_(gaussian) {}

std::optional<BranchState> BranchState::coarsened() const {
  auto rho = rho_.coarsened();
  auto phase = phase_.coarsened();
  if (!rho || !phase) return std::nullopt;
  return BranchState(Unchecked{}, magnitude_, std::move(*rho), std::move(*phase), mass_,
                     gaussian_);
}

ModelState::ModelState(LambdaDistribution lambda, std::vector<BranchState> branches, double hbar,
                       double floor_factor)
    : lambda_(std::move(lambda)), hbar_(hbar), floor_factor_(floor_factor) {
  if (!(hbar_ > 0.0) || !std::isfinite(hbar_)) {
    throw std::invalid_argument("ModelState: hbar must be positive");
  }
  if (!(floor_factor_ > 0.0 && floor_factor_ < 1.0)) {
    throw std::invalid_argument("ModelState: floor factor must lie in (0, 1)");
  }
  if (branches.size() != lambda_.size()) {
    std::ostringstream msg;
    msg << "ModelState: " << branches.size() << " branches for " << lambda_.size()
        << " lambda atoms";
    throw std::invalid_argument(msg.str());
  }
  std::vector<std::optional<BranchState>> slots(lambda_.size());
  for (auto& b : branches) {
    const auto index = lambda_.find(b.magnitude());
    if (!index) {
      std::ostringstream msg;
      msg << "ModelState: branch |lambda| = " << b.magnitude()
          << " matches no atom (atoms: " << lambda_.describe_magnitudes() << ")";
      throw std::invalid_argument(msg.str());
    }
    if (slots[*index]) {
      throw std::invalid_argument("ModelState: two branches for |lambda| = " +
                                  std::to_string(b.magnitude()));
    }
    slots[*index].emplace(std::move(b));
  }
  branches_.reserve(slots.size());
  for (auto& slot : slots) branches_.push_back(std::move(*slot));

  for (const auto& b : branches_) {
    if (!(b.grid() == grid())) throw std::invalid_argument("ModelState: branches use different grids");
    if (b.mass() != mass()) throw std::invalid_argument("ModelState: branches use different masses");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < branches_.size(); ++i) total += weight(i) * integrate(branches_[i].rho());
  if (std::abs(total - 1.0) > BranchState::kNormalizationTolerance) {
    throw std::invalid_argument("ModelState: joint density does not integrate to 1");
  }
}

ModelState::ModelState(Unchecked, LambdaDistribution lambda, std::vector<BranchState> branches,
                       double hbar, double floor_factor)
    : lambda_(std::move(lambda)),
      branches_(std::move(branches)),
      hbar_(hbar),
      floor_factor_(floor_factor) {}

const BranchState& ModelState::branch(double lambda) const {
  const auto index = lambda_.find(lambda);
  if (!index) {
    std::ostringstream msg;
    msg << "no branch for |lambda| = " << std::abs(lambda)
        << "; available magnitudes: " << lambda_.describe_magnitudes();
    throw std::invalid_argument(msg.str());
  }
  return branches_[*index];
}

double ModelState::floor(std::size_t branch_index) const {
  return relative_floor(branches_[branch_index].rho(), floor_factor_);
}

std::optional<ModelState> ModelState::coarsened() const {
  std::vector<BranchState> coarse;
  coarse.reserve(branches_.size());
  for (const auto& b : branches_) {
    auto c = b.coarsened();
    if (!c) return std::nullopt;
    coarse.push_back(std::move(*c));
  }
  return ModelState(Unchecked{}, lambda_, std::move(coarse), hbar_, floor_factor_);
}

}  // namespace smq
