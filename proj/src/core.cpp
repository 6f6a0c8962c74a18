#include "gmqaoa/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gmqaoa/errors.hpp"

namespace gmqaoa {

std::size_t dense_size(int n, int q, std::uint64_t limit) {
  if (n < 1) throw InputError("site count must be at least 1");
  if (q < 2) throw InputError("alphabet size must be at least 2");
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= static_cast<std::uint64_t>(q);
    if (size > limit) {
      throw CapExceeded("q^n = " + std::to_string(q) + "^" +
                        std::to_string(n) + " exceeds the dense-size limit " +
                        std::to_string(limit));
    }
  }
  return static_cast<std::size_t>(size);
}

std::vector<int> decode_string(std::size_t index, int n, int q) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (auto& digit : digits) {
    digit = static_cast<int>(index % static_cast<std::size_t>(q));
    index /= static_cast<std::size_t>(q);
  }
  return digits;
}

ObjectiveTable::ObjectiveTable(int n, int q, std::vector<double> values,
                               std::uint64_t limit)
    : n_(n), q_(q), values_(std::move(values)) {
  const auto expected = dense_size(n, q, limit);
  if (values_.size() != expected) {
    throw ValidationError("objective table has " +
                          std::to_string(values_.size()) +
                          " values, expected q^n = " + std::to_string(expected));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw ValidationError("objective value at index " + std::to_string(i) +
                            " is not finite");
    }
  }
}

std::vector<std::size_t> Spectrum::members(std::size_t level) const {
  std::vector<std::size_t> out;
  out.reserve(levels.at(level).multiplicity);
  for (std::size_t x = 0; x < level_of.size(); ++x) {
    if (level_of[x] == level) out.push_back(x);
  }
  return out;
}

bool Spectrum::integer_valued() const {
  return std::all_of(levels.begin(), levels.end(), [](const Level& l) {
    return std::abs(l.value) < 0x1p52 && std::floor(l.value) == l.value;
  });
}

Spectrum build_spectrum(const ObjectiveTable& objective, double tol_level) {
  const auto& values = objective.values();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });

  Spectrum spectrum;
  spectrum.level_of.assign(values.size(), 0);
  for (auto x : order) {
    const double v = values[x];
    const bool same = !spectrum.levels.empty() &&
                      (tol_level > 0.0
                           ? spectrum.levels.back().value - v <= tol_level
                           : spectrum.levels.back().value == v);
    if (!same) spectrum.levels.push_back({v, 0});
    spectrum.levels.back().multiplicity += 1;
    spectrum.level_of[x] = spectrum.levels.size() - 1;
  }
  return spectrum;
}

InitialState::InitialState(Eigen::VectorXcd amplitudes, double tol_norm)
    : amplitudes_(std::move(amplitudes)), norm_(amplitudes_.norm()) {
  if (amplitudes_.size() == 0) throw ValidationError("initial state is empty");
  if (!amplitudes_.allFinite()) {
    throw ValidationError("initial state has non-finite amplitudes");
  }
  if (std::abs(norm_ - 1.0) > tol_norm) {
    throw ValidationError("initial state is not normalized (norm " +
                          std::to_string(norm_) + ")");
  }
}

InitialState uniform_state(int n, int q, std::uint64_t limit) {
  const auto dim = dense_size(n, q, limit);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  return InitialState(
      Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(dim), Complex(amp, 0.0)));
}

InitialState basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InputError("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return InitialState(std::move(v));
}

LevelProjection project_onto_levels(const InitialState& state,
                                    const Spectrum& spectrum, double tol_zero) {
  if (state.size() != spectrum.dimension()) {
    throw InputError("initial state dimension " + std::to_string(state.size()) +
                     " does not match objective dimension " +
                     std::to_string(spectrum.dimension()));
  }
  const auto r = spectrum.distinct();
  const auto dim = static_cast<Eigen::Index>(state.size());
  std::vector<Eigen::VectorXcd> blocks(r, Eigen::VectorXcd::Zero(dim));
  const auto& amps = state.amplitudes();
  for (Eigen::Index x = 0; x < dim; ++x) {
    blocks[spectrum.level_of[static_cast<std::size_t>(x)]](x) = amps(x);
  }

  LevelProjection out;
  out.weights.resize(r);
  out.components.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    const double w = blocks[j].norm();
    out.weights[j] = w;
    if (w > tol_zero) out.components[j] = blocks[j] / w;
  }
  return out;
}

Eigen::VectorXcd LevelOverlaps::reconstruct(std::size_t dim) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  for (auto j : supported_levels) out += c[j] * *xi_components[j];
  return out;
}

LevelOverlaps decompose_initial_state(const InitialState& state,
                                      const Spectrum& spectrum, double tol_zero,
                                      double tol_norm) {
  auto projection = project_onto_levels(state, spectrum, tol_zero);
  const auto r = spectrum.distinct();

  LevelOverlaps out;
  out.c.assign(r, 0.0);
  out.xi_components.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    if (!projection.components[j]) continue;
    Eigen::VectorXcd xi = std::move(*projection.components[j]);
    Eigen::Index lead = 0;
    while (std::abs(xi(lead)) <= tol_zero) ++lead;
    const Complex phase = xi(lead) / std::abs(xi(lead));
    // xi_j = conj(phase) * projection, so c_j = weight * phase.
    if (std::abs(phase.imag()) * projection.weights[j] > tol_norm) {
      throw ComplexOverlapError("level " + std::to_string(j) +
                                " has a non-real phase");
    }
    const double sign = phase.real() >= 0.0 ? 1.0 : -1.0;
    xi *= std::conj(phase);
    xi(lead) = Complex(xi(lead).real(), 0.0);
    out.c[j] = sign * projection.weights[j];
    out.xi_components[j] = std::move(xi);
    out.supported_levels.push_back(j);
  }
  return out;
}

}  // namespace gmqaoa
