#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "gmqaoa/core.hpp"

namespace gmqaoa {

/// Cost Hamiltonian and Grover mixer restricted to W_0 = span{xi_j},
/// in the basis of supported levels ordered by descending value.
struct RestrictedGenerators {
  Eigen::MatrixXd h_p0;  ///< diag(lambda_j)
  Eigen::MatrixXd g_m0;  ///< -c c^T
};

RestrictedGenerators restricted_generators(const Spectrum& spectrum,
                                           const LevelOverlaps& overlaps);

enum class DlaBranch { SumNonzero, SumZero };

std::string to_string(DlaBranch branch);

/// Closed-form DLA classification su_d + u_1^{center_dim}.
struct DlaPrediction {
  std::size_t d = 0;
  double sum_c = 0.0;
  double sum_c_squared = 0.0;
  DlaBranch branch = DlaBranch::SumNonzero;
  std::string semisimple;  ///< "su_d"
  std::string abelian;     ///< "u_1^2" or "u_1"
  std::size_t dim = 0;
  std::size_t center_dim = 0;
  /// d == 1: the generic argument does not cover this case; `span_dim`
  /// holds the dimension of span{iH_P, iG_M}, which is the whole algebra.
  bool degenerate = false;
  std::optional<std::size_t> span_dim;

  std::string algebra() const { return semisimple + " + " + abelian; }

  bool operator==(const DlaPrediction&) const = default;
};

DlaPrediction predict_dla(const Spectrum& spectrum, const LevelOverlaps& overlaps,
                          double tol_zero = kDefaultTolZero);

struct CommutantPrediction {
  std::size_t dim = 0;

  bool operator==(const CommutantPrediction&) const = default;
};

/// 1 + sum_{supported} (n_j - 1)^2 + sum_{unsupported} n_j^2.
CommutantPrediction predict_commutant(const Spectrum& spectrum,
                                      const LevelOverlaps& overlaps);

struct LossStatsPrediction {
  double zeta_mean = 0.0;
  double zeta_var = 0.0;
  double p_su_rho = 0.0;
  double p_su_hp = 0.0;
  /// Only defined for a two-dimensional center.
  std::optional<double> expected_loss;
  double loss_variance = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;

  bool operator==(const LossStatsPrediction&) const = default;
};

LossStatsPrediction predict_loss_stats(const Spectrum& spectrum,
                                       const LevelOverlaps& overlaps,
                                       double tol_zero = kDefaultTolZero);

/// (dimension of the irreducible block W_0, number of invariant lines).
std::pair<std::size_t, std::size_t> isotypic_summary(const Spectrum& spectrum,
                                                     const LevelOverlaps& overlaps);

/// Range-size bound m*T + 1 for an s-local objective: a sum of T terms on
/// s-subsets, each valued in {0..m}. Requires T <= C(n, s).
std::size_t slocal_bound(int n, int s, std::size_t m, std::size_t T);

/// Lower bound on the loss variance implied by a range of at most
/// `range_bound` values: var_zeta / (range_bound + 1).
double variance_lower_bound(double zeta_var, std::size_t range_bound);

}  // namespace gmqaoa
