#include "gmqaoa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "gmqaoa/errors.hpp"

namespace gmqaoa {

namespace {

void require_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InputError("dimension mismatch: " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

}  // namespace

ParameterSet::ParameterSet(std::vector<double> betas, std::vector<double> gammas,
                           const ParameterRanges& ranges)
    : betas_(std::move(betas)), gammas_(std::move(gammas)) {
  if (betas_.size() != gammas_.size()) {
    throw InputError("betas and gammas must have the same length");
  }
  for (double b : betas_) {
    if (!(b >= 0.0 && b < ranges.beta_max)) throw InputError("beta outside [0, beta_max)");
  }
  for (double g : gammas_) {
    if (!(g >= 0.0 && g < ranges.gamma_max)) throw InputError("gamma outside [0, gamma_max)");
  }
}

StateVector apply_phase_layer(StateVector state, const ObjectiveTable& objective,
                              double gamma) {
  require_dim(static_cast<std::size_t>(state.amplitudes.size()), objective.size());
  for (Eigen::Index x = 0; x < state.amplitudes.size(); ++x) {
    state.amplitudes(x) *= std::polar(1.0, -gamma * objective[static_cast<std::size_t>(x)]);
  }
  return state;
}

StateVector apply_grover_mixer(StateVector state, const InitialState& xi, double beta) {
  require_dim(static_cast<std::size_t>(state.amplitudes.size()), xi.size());
  const Complex overlap = xi.amplitudes().dot(state.amplitudes);
  const Complex factor = (std::polar(1.0, beta) - 1.0) * overlap;
  state.amplitudes += factor * xi.amplitudes();
  return state;
}

StateVector run_circuit(const InitialState& xi, const ObjectiveTable& objective,
                        const ParameterSet& params) {
  require_dim(xi.size(), objective.size());
  StateVector state{xi.amplitudes()};
  for (std::size_t layer = 0; layer < params.depth(); ++layer) {
    state = apply_phase_layer(std::move(state), objective, params.gammas()[layer]);
    state = apply_grover_mixer(std::move(state), xi, params.betas()[layer]);
  }
  return state;
}

double loss(const StateVector& state, const ObjectiveTable& objective) {
  require_dim(static_cast<std::size_t>(state.amplitudes.size()), objective.size());
  // Measured from the minimum so a constant objective is reproduced exactly.
  const auto& values = objective.values();
  const double floor = *std::min_element(values.begin(), values.end());
  double total = 0.0;
  for (Eigen::Index x = 0; x < state.amplitudes.size(); ++x) {
    total += (values[static_cast<std::size_t>(x)] - floor) * std::norm(state.amplitudes(x));
  }
  return floor + total;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SampleStream::stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index)
    : state_(stream_seed(seed, index)) {}

std::uint64_t SampleStream::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix64(state_);
}

double SampleStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

ParameterSet sample_parameters(SampleStream& stream, std::size_t depth,
                               const ParameterRanges& ranges) {
  // Rounding can push u * max up to max itself; keep the box half-open.
  const auto draw = [&](double max) {
    return std::min(stream.uniform() * max, std::nextafter(max, 0.0));
  };
  std::vector<double> betas(depth);
  std::vector<double> gammas(depth);
  for (auto& b : betas) b = draw(ranges.beta_max);
  for (auto& g : gammas) g = draw(ranges.gamma_max);
  return ParameterSet(std::move(betas), std::move(gammas), ranges);
}

double pairwise_sum(const double* values, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += values[i];
    return s;
  }
  const auto half = count / 2;
  return pairwise_sum(values, half) + pairwise_sum(values + half, count - half);
}

McReport summarize_samples(const std::vector<double>& losses, std::size_t p,
                           std::uint64_t seed) {
  const auto m = losses.size();
  if (m < 2) throw InputError("at least two samples are required");
  const double md = static_cast<double>(m);
  const double mean = pairwise_sum(losses.data(), m) / md;
  std::vector<double> sq(m);
  std::vector<double> quad(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double dev = losses[i] - mean;
    sq[i] = dev * dev;
    quad[i] = sq[i] * sq[i];
  }
  const double m2 = pairwise_sum(sq.data(), m) / md;
  const double m4 = pairwise_sum(quad.data(), m) / md;

  McReport report;
  report.p = p;
  report.samples = m;
  report.seed = seed;
  report.mean = mean;
  report.variance = m2 * md / (md - 1.0);
  report.stderr_mean = std::sqrt(report.variance / md);
  // Var(s^2) ~ (mu_4 - (m - 3)/(m - 1) sigma^4) / m.
  const double var_of_var = (m4 - (md - 3.0) / (md - 1.0) * m2 * m2) / md;
  report.stderr_variance = std::sqrt(std::max(0.0, var_of_var));
  return report;
}

McReport monte_carlo_stats(const InitialState& xi, const ObjectiveTable& objective,
                           std::size_t p, std::size_t samples, std::uint64_t seed,
                           const McOptions& options) {
  if (samples < 2) throw InputError("at least two samples are required");
  if (p < 1) throw InputError("depth must be at least 1");
  require_dim(xi.size(), objective.size());

  std::vector<double> losses(samples);
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      SampleStream stream(seed, i);
      const auto params = sample_parameters(stream, p, options.ranges);
      losses[i] = loss(run_circuit(xi, objective, params), objective);
    }
  };

  const auto threads = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, samples));
  if (threads == 1) {
    work(0, samples);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(work, samples * t / threads, samples * (t + 1) / threads);
    }
  }
  return summarize_samples(losses, p, seed);
}

std::vector<McReport> depth_sweep(const InitialState& xi,
                                  const ObjectiveTable& objective,
                                  const std::vector<std::size_t>& depths,
                                  std::size_t samples, std::uint64_t seed,
                                  const McOptions& options) {
  if (depths.empty()) throw InputError("depth list is empty");
  std::vector<McReport> out;
  out.reserve(depths.size());
  for (auto p : depths) out.push_back(monte_carlo_stats(xi, objective, p, samples, seed, options));
  return out;
}

double grover_mixer_identity_check(int n) {
  if (n < 1 || n > 10) throw CapExceeded("grover_mixer_identity_check supports 1 <= n <= 10");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);

  // -(1/2^n) (I + X_1) ... (I + X_n) as a product of dense operators.
  Eigen::MatrixXd product = Eigen::MatrixXd::Identity(dim, dim);
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd factor = Eigen::MatrixXd::Identity(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) factor(x, x ^ (Eigen::Index{1} << j)) += 1.0;
    product = product * factor;
  }
  product *= -1.0 / static_cast<double>(dim);

  // |+...+> as a tensor product of single-qubit |+>.
  Eigen::VectorXd plus = Eigen::VectorXd::Ones(1);
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd next(plus.size() * 2);
    next << plus / std::sqrt(2.0), plus / std::sqrt(2.0);
    plus = std::move(next);
  }
  const Eigen::MatrixXd projector = -plus * plus.transpose();
  return (product - projector).cwiseAbs().maxCoeff();
}

}  // namespace gmqaoa
