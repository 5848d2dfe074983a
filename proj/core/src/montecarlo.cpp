#include "smq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "smq/counter_rng.hpp"
#include "smq/numerics.hpp"
#include "smq/uncertainty.hpp"

namespace smq {
namespace {

class Fnv1a {
 public:
  void add(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    add(bits);
  }
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xFFu;
      hash_ *= 0x100000001B3ULL;
    }
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

/// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double sum() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double mean_of(const std::vector<double>& x) {
  Accumulator acc;
  for (double v : x) acc.add(v);
  return acc.sum() / static_cast<double>(x.size());
}

/// Sample variance (1/n) with the standard error sqrt((m4 - s^4) / n).
McMoment variance_of(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mu = mean_of(x);
  Accumulator m2;
  Accumulator m4;
  for (double v : x) {
    const double d = (v - mu) * (v - mu);
    m2.add(d);
    m4.add(d * d);
  }
  const double s2 = m2.sum() / n;
  const double k4 = m4.sum() / n;
  return {s2, std::sqrt(std::max(0.0, k4 - s2 * s2) / n)};
}

struct MeanStats {
  double mean;
  double variance;  // of a single draw
};

MeanStats stats_of(const std::vector<double>& x) {
  const McMoment v = variance_of(x);
  return {mean_of(x), v.estimate};
}

void require_matching(const SampleBatch& batch, const ModelState& state) {
  if (batch.state_fingerprint != fingerprint(state)) {
    throw std::invalid_argument("sample batch was drawn from a different state");
  }
  if (batch.samples.empty()) throw std::invalid_argument("empty sample batch");
}

VerificationReport concordance(std::string name, const McMoment& mc, double quadrature,
                               std::optional<double> quadrature_error, const SampleBatch& batch) {
  const double qerr = quadrature_error.value_or(0.0);
  const double combined = std::sqrt(mc.standard_error * mc.standard_error + qerr * qerr);
  auto r = make_absolute_identity(std::move(name), mc.estimate, quadrature, 3.0 * combined);
  r.discretization_estimate = quadrature_error;
  r.details = {{"standard_error", mc.standard_error},
               {"combined_standard_error", combined},
               {"z_score", combined > 0.0 ? (mc.estimate - quadrature) / combined : 0.0},
               {"n_samples", static_cast<double>(batch.size())},
               {"seed", static_cast<double>(batch.seed)}};
  return r;
}

}  // namespace

std::uint64_t fingerprint(const ModelState& state) {
  Fnv1a h;
  const Grid1D& g = state.grid();
  h.add(g.q_min());
  h.add(g.q_max());
  h.add(static_cast<std::uint64_t>(g.size()));
  h.add(state.mass());
  h.add(state.hbar());
  h.add(state.floor_factor());
  for (const auto& atom : state.lambda().atoms()) {
    h.add(atom.magnitude);
    h.add(atom.weight);
  }
  for (const auto& b : state.branches()) {
    for (double v : b.rho().values()) h.add(v);
    for (double v : b.phase().values()) h.add(v);
  }
  return h.value();
}

SampleBatch sample(const ModelState& state, std::size_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("sample: need at least one sample");
  const auto signed_atoms = state.lambda().signed_atoms();
  std::vector<double> lambda_cdf;
  std::vector<std::size_t> lambda_branch;
  double running = 0.0;
  for (const auto& s : signed_atoms) {
    running += s.probability;
    lambda_cdf.push_back(running);
    lambda_branch.push_back(*state.lambda().find(s.value));
  }
  lambda_cdf.back() = 1.0;

  const Grid1D& grid = state.grid();
  const double h = grid.spacing();
  std::vector<std::vector<double>> q_cdf;
  for (const auto& b : state.branches()) {
    const auto rho = b.rho().values();
    std::vector<double> cdf(rho.size(), 0.0);
    for (std::size_t i = 1; i < rho.size(); ++i) cdf[i] = cdf[i - 1] + 0.5 * h * (rho[i - 1] + rho[i]);
    const double total = cdf.back();
    for (double& c : cdf) c /= total;
    q_cdf.push_back(std::move(cdf));
  }

  SampleBatch batch;
  batch.seed = seed;
  batch.state_fingerprint = fingerprint(state);
  batch.samples.resize(n);
  const CounterRng rng(seed);

  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double u_lambda = rng.uniform(2 * i);
      const double u_q = rng.uniform(2 * i + 1);
      const auto it = std::upper_bound(lambda_cdf.begin(), lambda_cdf.end(), u_lambda);
      const std::size_t k = std::min<std::size_t>(it - lambda_cdf.begin(), lambda_cdf.size() - 1);
      const auto& cdf = q_cdf[lambda_branch[k]];
      const auto jt = std::upper_bound(cdf.begin(), cdf.end(), u_q);
      std::size_t cell = jt == cdf.begin() ? 0 : static_cast<std::size_t>(jt - cdf.begin()) - 1;
      cell = std::min(cell, cdf.size() - 2);
      const double width = cdf[cell + 1] - cdf[cell];
      const double t = width > 0.0 ? std::clamp((u_q - cdf[cell]) / width, 0.0, 1.0) : 0.0;
      batch.samples[i] = {grid.point(cell) + t * h, signed_atoms[k].value};
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    fill(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(fill, begin, end);
    }
  }
  return batch;
}

std::vector<double> sample_velocities(const SampleBatch& batch, const ModelState& state) {
  require_matching(batch, state);
  std::vector<ScalarField> grad_s;
  std::vector<ScalarField> score;
  for (std::size_t i = 0; i < state.branches().size(); ++i) {
    const auto& b = state.branches()[i];
    grad_s.push_back(derivative(b.phase()));
    score.push_back(log_derivative(b.rho(), state.floor(i)).field);
  }
  const double m = state.mass();
  std::vector<double> v(batch.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& s = batch.samples[i];
    const std::size_t k = *state.lambda().find(s.lambda);
    v[i] = (grad_s[k].interpolate(s.q) + 0.5 * s.lambda * score[k].interpolate(s.q)) / m;
  }
  return v;
}

McUncertainty estimate_uncertainty_product(const SampleBatch& batch, const ModelState& state,
                                           double q0) {
  require_matching(batch, state);
  const auto velocities = sample_velocities(batch, state);
  const double m = state.mass();
  const std::size_t n = batch.size();

  std::vector<double> q(n), x(n), y(n);
  std::vector<ScalarField> grad_s;
  for (const auto& b : state.branches()) grad_s.push_back(derivative(b.phase()));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = batch.samples[i];
    const std::size_t k = *state.lambda().find(s.lambda);
    q[i] = s.q;
    x[i] = (s.q - q0) * (s.q - q0);
    const double dev = m * velocities[i] - grad_s[k].interpolate(s.q);
    y[i] = 4.0 / (s.lambda * s.lambda) * dev * dev;
  }

  McUncertainty out;
  const double nn = static_cast<double>(n);
  const MeanStats sx = stats_of(x);
  const MeanStats sy = stats_of(y);
  Accumulator cov;
  for (std::size_t i = 0; i < n; ++i) cov.add((x[i] - sx.mean) * (y[i] - sy.mean));
  const double cxy = cov.sum() / nn;
  out.position_moment = {sx.mean, std::sqrt(sx.variance / nn)};
  out.velocity_deviation = {sy.mean, std::sqrt(sy.variance / nn)};
  const double prod_var = (sy.mean * sy.mean * sx.variance + sx.mean * sx.mean * sy.variance +
                           2.0 * sx.mean * sy.mean * cxy) /
                          nn;
  out.product = {sx.mean * sy.mean, std::sqrt(std::max(0.0, prod_var))};
  out.sigma_q = variance_of(q);
  out.sigma_qdot = variance_of(velocities);

  const double moment = position_second_moment(state, q0);
  const auto deviation = weighted_velocity_deviation(state);
  const auto qdot_var = velocity_variance(state);
  out.quadrature_product = moment * deviation.value;
  out.quadrature_sigma_q = position_second_moment(state, position_mean(state));
  out.quadrature_sigma_qdot = qdot_var.value;

  std::optional<double> product_err;
  if (deviation.error_estimate) product_err = moment * *deviation.error_estimate;
  out.reports.push_back(
      concordance("mc_uncertainty_product", out.product, out.quadrature_product, product_err, batch));
  out.reports.back().details.insert(out.reports.back().details.begin(), {"q0", q0});
  out.reports.push_back(
      concordance("mc_position_variance", out.sigma_q, out.quadrature_sigma_q, std::nullopt, batch));
  out.reports.push_back(concordance("mc_velocity_variance", out.sigma_qdot,
                                    out.quadrature_sigma_qdot, qdot_var.error_estimate, batch));
  for (auto& r : out.reports) r.grid = state.grid();
  return out;
}

VelocityHistogram velocity_histogram(const SampleBatch& batch, const ModelState& state,
                                     std::size_t n_bins) {
  if (n_bins < 10) throw std::invalid_argument("velocity_histogram: need at least 10 bins");
  auto v = sample_velocities(batch, state);
  const std::size_t n = v.size();

  VelocityHistogram out;
  const McMoment var = variance_of(v);
  out.mean = mean_of(v);
  out.std_dev = std::sqrt(var.estimate);
  const double half = out.std_dev > 0.0 ? 6.0 * out.std_dev : 1.0;
  const double lo = out.mean - half;
  const double width = 2.0 * half / static_cast<double>(n_bins);
  out.edges.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b) out.edges[b] = lo + static_cast<double>(b) * width;
  out.counts.assign(n_bins, 0);
  for (double x : v) {
    const double t = std::floor((x - lo) / width);
    std::size_t bin;
    if (t < 0.0) {
      bin = 0;
      ++out.outliers_low;
    } else if (t >= static_cast<double>(n_bins)) {
      bin = n_bins - 1;
      if (x > out.edges.back()) ++out.outliers_high;
    } else {
      bin = static_cast<std::size_t>(t);
    }
    ++out.counts[bin];
  }
  out.density.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    out.density[b] = static_cast<double>(out.counts[b]) / (static_cast<double>(n) * width);
  }

  try {
    out.analytic = velocity_distribution_analytic(state);
  } catch (const std::invalid_argument&) {
    out.analytic.reset();
  }
  if (out.analytic) {
    std::sort(v.begin(), v.end());
    double d = 0.0;
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = out.analytic->cdf(v[i]);
      d = std::max({d, static_cast<double>(i + 1) / nn - f, f - static_cast<double>(i) / nn});
    }
    const double critical = kKolmogorovQuantile99 / std::sqrt(nn);
    out.ks = KsResult{d, critical, d < critical};
  }
  return out;
}

}  // namespace smq
