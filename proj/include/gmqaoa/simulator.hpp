#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "gmqaoa/core.hpp"

namespace gmqaoa {

struct StateVector {
  Eigen::VectorXcd amplitudes;
};

/// Half-open sampling boxes for the mixer (beta) and phase (gamma) angles.
struct ParameterRanges {
  double beta_max = 2.0 * std::numbers::pi;
  double gamma_max = std::numbers::pi;

  bool operator==(const ParameterRanges&) const = default;
};

/// Angles of a depth-p circuit; layer i applies gammas[i] then betas[i].
class ParameterSet {
 public:
  ParameterSet(std::vector<double> betas, std::vector<double> gammas,
               const ParameterRanges& ranges = {});

  std::size_t depth() const noexcept { return betas_.size(); }
  const std::vector<double>& betas() const noexcept { return betas_; }
  const std::vector<double>& gammas() const noexcept { return gammas_; }

 private:
  std::vector<double> betas_;
  std::vector<double> gammas_;
};

/// psi(x) <- exp(-i gamma F(x)) psi(x).
StateVector apply_phase_layer(StateVector state, const ObjectiveTable& objective,
                              double gamma);

/// exp(-i beta G_M) with G_M = -|xi><xi|, via the rank-one closed form
/// psi + (e^{i beta} - 1) <xi|psi> xi.
StateVector apply_grover_mixer(StateVector state, const InitialState& xi, double beta);

StateVector run_circuit(const InitialState& xi, const ObjectiveTable& objective,
                        const ParameterSet& params);

/// sum_x F(x) |psi(x)|^2.
double loss(const StateVector& state, const ObjectiveTable& objective);

/// Counter-based streams: sample i of a run with master seed s draws from a
/// splitmix64 sequence started at stream_seed(s, i). No state is shared
/// between samples, so any schedule yields the same draws.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index);

  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Angles for one sample: betas first (layer order), then gammas.
ParameterSet sample_parameters(SampleStream& stream, std::size_t depth,
                               const ParameterRanges& ranges = {});

struct McReport {
  std::size_t p = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const McReport&) const = default;
};

struct McOptions {
  ParameterRanges ranges{};
  unsigned threads = 1;
};

/// Sum in a fixed pairwise order independent of how values were produced.
double pairwise_sum(const double* values, std::size_t count);

/// Mean and variance of the loss over uniformly sampled parameters.
McReport monte_carlo_stats(const InitialState& xi, const ObjectiveTable& objective,
                           std::size_t p, std::size_t samples, std::uint64_t seed,
                           const McOptions& options = {});

/// Summary statistics of a finished sample set (exposed for testing).
McReport summarize_samples(const std::vector<double>& losses, std::size_t p,
                           std::uint64_t seed);

std::vector<McReport> depth_sweep(const InitialState& xi,
                                  const ObjectiveTable& objective,
                                  const std::vector<std::size_t>& depths,
                                  std::size_t samples, std::uint64_t seed,
                                  const McOptions& options = {});

/// Max entrywise gap between -(1/2^n) prod_j (I + X_j) and -|+..+><+..+|.
double grover_mixer_identity_check(int n);

}  // namespace gmqaoa
