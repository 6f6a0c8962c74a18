#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmqaoa/core.hpp"

namespace gmqaoa {

inline constexpr std::size_t kOracleDimCap = 64;
inline constexpr std::size_t kDefaultClosureCap = 4096;
inline constexpr double kDefaultTolIndep = 1e-9;
inline constexpr double kDefaultTolRank = 1e-8;

/// Skew-Hermitian operators, orthonormal under Re Tr(A^dagger B).
///
/// The span is a *real* vector space: dimensions reported by the closure are
/// real dimensions of a real Lie algebra. The commutant solver, in contrast,
/// counts complex dimensions of the space of commuting complex matrices.
struct OperatorBasis {
  std::size_t dim_space = 0;
  std::vector<Eigen::MatrixXcd> elements;

  std::size_t size() const noexcept { return elements.size(); }
};

struct ClosureReport {
  std::size_t dimension = 0;
  std::size_t rounds = 0;
  double max_residual_discarded = 0.0;
  bool hit_cap = false;  ///< dimension is then only a lower bound
};

struct ClosureResult {
  OperatorBasis basis;
  ClosureReport report;
};

struct GmGenerators {
  Eigen::MatrixXcd i_hp;  ///< i H_P, H_P = diag(F)
  Eigen::MatrixXcd i_gm;  ///< i G_M, G_M = -|xi><xi|
};

GmGenerators gm_generators(const ObjectiveTable& objective,
                           const InitialState& state,
                           std::size_t cap = kOracleDimCap);

/// Hermitian B = sum_j X_j on n qubits (not multiplied by i).
Eigen::MatrixXcd x_mixer_generator(int n, int q = 2,
                                   std::size_t cap = kOracleDimCap);

/// i(H_P - mean(F) I): the traceless cost generator used with the X mixer,
/// matching the Ising form sum of Z_u Z_v for MaxCut.
Eigen::MatrixXcd centered_cost_generator(const ObjectiveTable& objective,
                                         std::size_t cap = kOracleDimCap);

/// Real Lie closure of skew-Hermitian generators.
///
/// Generators are orthonormalized in input order. Each round commutes every
/// frontier element (added in the previous round) with every basis element in
/// index order; a commutator is normalized, projected out of the current basis
/// by modified Gram-Schmidt with one re-orthogonalization pass, and kept when
/// its residual exceeds tol_indep. Stops when a round adds nothing or the
/// basis reaches dim_cap.
ClosureResult lie_closure(const std::vector<Eigen::MatrixXcd>& generators,
                          double tol_indep = kDefaultTolIndep,
                          std::size_t dim_cap = kDefaultClosureCap);

/// Complex dimension of {X : [X, B_k] = 0 for all k}, computed as the nullity
/// of sum_k ad_{B_k}^dagger ad_{B_k} on N x N matrices. The operator is
/// restricted to the centralizer of a generic element of the span, which is
/// block diagonal in that element's eigenbasis and contains the commutant.
std::size_t commutant_dimension(const OperatorBasis& basis,
                                double tol_rank = kDefaultTolRank,
                                std::size_t cap = kOracleDimCap);

/// Same quantity from the unreduced N^2 x N^2 operator. Reference only.
std::size_t commutant_dimension_full(const OperatorBasis& basis,
                                     double tol_rank = kDefaultTolRank,
                                     std::size_t cap = kOracleDimCap);

/// Relative residual of `target` after projection onto span(basis).
double span_residual(const OperatorBasis& basis, const Eigen::MatrixXcd& target);

/// max_k max_v ||(1 - P) B_k v|| with P the projector onto span(subspace).
double invariant_subspace_residual(const OperatorBasis& basis,
                                   const std::vector<Eigen::VectorXcd>& subspace);

/// max_k max_v ||B_k v - <v|B_k|v> v||: zero iff every v spans a line
/// invariant under every basis element.
double eigenline_residual(const OperatorBasis& basis,
                          const std::vector<Eigen::VectorXcd>& lines);

/// W_0 = span of the normalized level projections of the state, and an
/// orthonormal basis of its complement built level by level.
struct IsotypicSubspaces {
  std::vector<Eigen::VectorXcd> w0;
  std::vector<Eigen::VectorXcd> complement;
};

IsotypicSubspaces isotypic_subspaces(const Spectrum& spectrum,
                                     const InitialState& state,
                                     double tol_zero = kDefaultTolZero);

/// Nonzero frame entries A(0,j), A(j,0), A(j,k), A(k,j), k = size-1,
/// for 0 < j < k. Vacuously true for size 2.
bool frame_condition(const Eigen::MatrixXcd& A, double tol_zero = kDefaultTolZero);

class MatrixUnitError : public std::runtime_error {
 public:
  enum class Reason { NotDescending, FrameViolated, CornerZero, Ambiguous, Inaccurate };

  MatrixUnitError(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Off-diagonal matrix units recovered inside the Lie algebra generated by
/// D = diag(diagonal) and A.
struct MatrixUnits {
  std::size_t d = 0;
  std::vector<Eigen::MatrixXcd> units;  ///< row-major (i, j); diagonal slots empty
  double max_deviation = 0.0;

  const Eigen::MatrixXcd& at(std::size_t i, std::size_t j) const {
    return units[i * d + j];
  }
};

/// Builds every E_ij (i != j) from D and A using only brackets, linear
/// combinations and spectral selectors of ad_D.
///
/// A selector for the eigenvalue difference t keeps the entries (k, l), k != l,
/// with D_k - D_l = t and zeroes everything else, including the diagonal.
/// Differences compare exactly when D is integer valued, within 1e-9 otherwise.
/// When a selector on the row/column frame hits two entries, a second element
/// of the same two-dimensional weight space is formed by one more bracket and
/// the pair is separated by a 2x2 solve.
MatrixUnits extract_matrix_units(const Eigen::VectorXd& diagonal,
                                 const Eigen::MatrixXcd& A, double tol = 1e-9);

/// Dense matrix unit E_ij of size d.
Eigen::MatrixXcd matrix_unit(std::size_t d, std::size_t i, std::size_t j);

}  // namespace gmqaoa
