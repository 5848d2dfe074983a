#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "smq/model_state.hpp"
#include "smq/report.hpp"
#include "smq/velocity_distribution.hpp"

namespace smq {

struct Sample {
  double q;
  double lambda;
};

/// Draws from Omega(q, lambda). (seed, state, n) determines the batch bit for bit.
struct SampleBatch {
  std::uint64_t seed = 0;
  std::uint64_t state_fingerprint = 0;
  std::vector<Sample> samples;

  std::size_t size() const noexcept { return samples.size(); }
};

/// Hash of everything that defines the state (grid, mass, hbar, atoms, fields).
std::uint64_t fingerprint(const ModelState& state);

/// lambda by inverse CDF over the signed atoms; q by inverse CDF of the branch
/// density's cumulative trapezoid table, linear between grid points. Sample i
/// consumes counters 2i and 2i+1, so the result does not depend on `threads`.
/// Throws std::invalid_argument when n == 0.
SampleBatch sample(const ModelState& state, std::size_t n, std::uint64_t seed,
                   unsigned threads = 1);

/// qdot for each sample from the velocity relation, fields interpolated linearly.
/// Throws std::invalid_argument if the batch was drawn from a different state.
std::vector<double> sample_velocities(const SampleBatch& batch, const ModelState& state);

struct McMoment {
  double estimate = 0.0;
  double standard_error = 0.0;
};

struct McUncertainty {
  McMoment position_moment;     // mean of (q - q0)^2
  McMoment velocity_deviation;  // mean of (4 / lambda^2)(m qdot - d_q S)^2
  McMoment product;             // delta-method standard error
  McMoment sigma_q;             // sample variance of q
  McMoment sigma_qdot;          // sample variance of qdot
  double quadrature_product = 0.0;
  double quadrature_sigma_q = 0.0;
  double quadrature_sigma_qdot = 0.0;
  /// Concordance with quadrature within 3 combined standard errors, in the
  /// order product, sigma_q, sigma_qdot.
  std::vector<VerificationReport> reports;
};

McUncertainty estimate_uncertainty_product(const SampleBatch& batch, const ModelState& state,
                                           double q0);

struct KsResult {
  double statistic;
  double critical_value;  // 1% level, asymptotic 1.6276 / sqrt(n)
  bool pass;
};

/// Histogram of sampled qdot over mean +/- 6 standard deviations; values
/// outside the range are counted into the end bins and reported.
struct VelocityHistogram {
  std::vector<double> edges;  // n_bins + 1
  std::vector<std::size_t> counts;
  std::vector<double> density;
  std::size_t outliers_low = 0;
  std::size_t outliers_high = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  /// Present when the state has a closed-form velocity distribution.
  std::optional<VelocityDistribution> analytic;
  std::optional<KsResult> ks;
};

/// Throws std::invalid_argument when n_bins < 10.
VelocityHistogram velocity_histogram(const SampleBatch& batch, const ModelState& state,
                                     std::size_t n_bins);

inline constexpr double kKolmogorovQuantile99 = 1.6276;

}  // namespace smq
