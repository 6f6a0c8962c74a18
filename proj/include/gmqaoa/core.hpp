#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace gmqaoa {

using Complex = std::complex<double>;

inline constexpr std::uint64_t kDefaultDenseLimit = std::uint64_t{1} << 20;
inline constexpr double kDefaultTolZero = 1e-10;
inline constexpr double kDefaultTolNorm = 1e-9;

/// Returns q^n, throwing CapExceeded when it exceeds `limit`.
std::size_t dense_size(int n, int q, std::uint64_t limit = kDefaultDenseLimit);

/// Digit of `site` in the base-q encoding of `index` (site 0 least significant).
inline int site_digit(std::size_t index, int site, int q) {
  for (int s = 0; s < site; ++s) index /= static_cast<std::size_t>(q);
  return static_cast<int>(index % static_cast<std::size_t>(q));
}

/// Decodes a string index into its per-site digits, site 0 first.
std::vector<int> decode_string(std::size_t index, int n, int q);

/// Dense real objective over all q^n strings.
///
/// The string with digits (x_0, ..., x_{n-1}) lives at index
/// sum_k x_k q^k. Construction validates length and finiteness.
class ObjectiveTable {
 public:
  ObjectiveTable(int n, int q, std::vector<double> values,
                 std::uint64_t limit = kDefaultDenseLimit);

  int n() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t index) const { return values_[index]; }
  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const ObjectiveTable&) const = default;

 private:
  int n_;
  int q_;
  std::vector<double> values_;
};

struct Level {
  double value;
  std::size_t multiplicity;

  bool operator==(const Level&) const = default;
};

/// Level-set decomposition of an objective: distinct values in strictly
/// descending order and the level index of every string.
struct Spectrum {
  std::vector<Level> levels;
  std::vector<std::size_t> level_of;

  std::size_t dimension() const noexcept { return level_of.size(); }
  std::size_t distinct() const noexcept { return levels.size(); }
  /// Indices of the strings in level j, ascending.
  std::vector<std::size_t> members(std::size_t level) const;
  /// True when every level value is an integer (exact arithmetic is safe).
  bool integer_valued() const;
};

/// Groups equal objective values. With tol_level > 0, a value joins the
/// current level when it lies within tol_level of the level's largest value.
Spectrum build_spectrum(const ObjectiveTable& objective, double tol_level = 0.0);

/// Normalized initial state |xi>.
class InitialState {
 public:
  explicit InitialState(Eigen::VectorXcd amplitudes,
                        double tol_norm = kDefaultTolNorm);

  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  double norm() const noexcept { return norm_; }

 private:
  Eigen::VectorXcd amplitudes_;
  double norm_;
};

InitialState uniform_state(int n, int q,
                           std::uint64_t limit = kDefaultDenseLimit);

/// Computational basis state |index> in dimension `dim`.
InitialState basis_state(std::size_t dim, std::size_t index);

/// Per-level projection of a state without any phase convention.
/// `weights[j]` is the norm of the projection onto level j and
/// `components[j]` its normalization (empty when the weight is below tol_zero).
struct LevelProjection {
  std::vector<double> weights;
  std::vector<std::optional<Eigen::VectorXcd>> components;
};

LevelProjection project_onto_levels(const InitialState& state,
                                    const Spectrum& spectrum,
                                    double tol_zero = kDefaultTolZero);

/// Real level coefficients c_j with unit components xi_j.
///
/// Phase convention: xi_j is the normalized projection rotated so that its
/// first nonzero amplitude (lowest string index) is real positive; c_j
/// carries the remaining real sign.
struct LevelOverlaps {
  std::vector<double> c;
  std::vector<std::optional<Eigen::VectorXcd>> xi_components;
  std::vector<std::size_t> supported_levels;

  std::size_t d() const noexcept { return supported_levels.size(); }
  /// Sum_j c_j xi_j.
  Eigen::VectorXcd reconstruct(std::size_t dim) const;
};

/// Throws ComplexOverlapError when some c_j would need a non-real phase.
LevelOverlaps decompose_initial_state(const InitialState& state,
                                      const Spectrum& spectrum,
                                      double tol_zero = kDefaultTolZero,
                                      double tol_norm = kDefaultTolNorm);

}  // namespace gmqaoa
