#include "gmqaoa/lie_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "gmqaoa/errors.hpp"

namespace gmqaoa {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr Complex kI{0.0, 1.0};

// Real view of a complex matrix: Re Tr(A^dagger B) is the dot product of views.
Eigen::Map<const Eigen::VectorXd> real_view(const MatrixXcd& m) {
  return {reinterpret_cast<const double*>(m.data()), 2 * m.size()};
}

Eigen::Map<Eigen::VectorXd> real_view(MatrixXcd& m) {
  return {reinterpret_cast<double*>(m.data()), 2 * m.size()};
}

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw CapExceeded("dimension " + std::to_string(dim) +
                      " exceeds the oracle cap " + std::to_string(cap));
  }
}

// Incrementally orthonormalized real span of skew-Hermitian matrices.
class SpanBuilder {
 public:
  SpanBuilder(double tol_indep, std::size_t cap) : tol_(tol_indep), cap_(cap) {}

  // Returns true when the candidate enlarged the span. The residual is judged
  // against `scale`, the size of the inputs that produced the candidate, so a
  // commutator that nearly cancels is not promoted by renormalized roundoff.
  bool offer(MatrixXcd candidate, double scale) {
    const double norm = candidate.norm();
    if (!(norm > 1e-14 * scale)) return false;
    candidate /= scale;
    auto v = real_view(candidate);
    double residual = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : elements_) {
        const auto qv = real_view(q);
        v.noalias() -= qv.dot(v) * qv;
      }
      residual = v.norm();
      // Far below tolerance after one pass: dependent, no second pass needed.
      if (pass == 0 && residual <= 1e-3 * tol_) break;
    }
    if (residual <= tol_) {
      max_discarded_ = std::max(max_discarded_, residual);
      return false;
    }
    candidate /= residual;
    elements_.push_back(std::move(candidate));
    return true;
  }

  bool full() const noexcept { return elements_.size() >= cap_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const MatrixXcd& operator[](std::size_t i) const { return elements_[i]; }
  double max_discarded() const noexcept { return max_discarded_; }
  std::vector<MatrixXcd> release() { return std::move(elements_); }

 private:
  double tol_;
  std::size_t cap_;
  double max_discarded_ = 0.0;
  std::vector<MatrixXcd> elements_;
};

}  // namespace

GmGenerators gm_generators(const ObjectiveTable& objective,
                           const InitialState& state, std::size_t cap) {
  const auto dim = objective.size();
  check_cap(dim, cap);
  if (state.size() != dim) throw InputError("initial state dimension mismatch");
  GmGenerators out;
  const Eigen::Map<const Eigen::VectorXd> f(objective.values().data(),
                                            static_cast<Index>(dim));
  out.i_hp = (kI * f.cast<Complex>()).asDiagonal();
  const auto& xi = state.amplitudes();
  out.i_gm = -kI * (xi * xi.adjoint());
  return out;
}

MatrixXcd x_mixer_generator(int n, int q, std::size_t cap) {
  if (q != 2) throw InputError("the X mixer is only defined for qubits (q = 2)");
  const auto dim = dense_size(n, 2, cap);
  MatrixXcd b = MatrixXcd::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t x = 0; x < dim; ++x)
    for (int j = 0; j < n; ++j)
      b(static_cast<Index>(x), static_cast<Index>(x ^ (std::size_t{1} << j))) = 1.0;
  return b;
}

MatrixXcd centered_cost_generator(const ObjectiveTable& objective, std::size_t cap) {
  const auto dim = objective.size();
  check_cap(dim, cap);
  const Eigen::Map<const Eigen::VectorXd> f(objective.values().data(),
                                            static_cast<Index>(dim));
  const Eigen::VectorXd centered = f.array() - f.mean();
  return (kI * centered.cast<Complex>()).asDiagonal();
}

ClosureResult lie_closure(const std::vector<MatrixXcd>& generators,
                          double tol_indep, std::size_t dim_cap) {
  if (generators.empty()) throw InputError("lie_closure needs at least one generator");
  const auto n = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != n || g.cols() != n) {
      throw InputError("generators must be square and of equal size");
    }
    if ((g + g.adjoint()).norm() > 1e-9 * std::max(1.0, g.norm())) {
      throw InputError("generators must be skew-Hermitian");
    }
  }

  SpanBuilder span(tol_indep, dim_cap);
  for (const auto& g : generators) {
    if (span.full()) break;
    span.offer(g, g.norm());
  }

  ClosureReport report;
  std::size_t frontier_begin = 0;
  std::size_t frontier_end = span.size();
  MatrixXcd comm(n, n);
  while (frontier_begin < frontier_end && !span.full()) {
    ++report.rounds;
    for (std::size_t f = frontier_begin; f < frontier_end && !span.full(); ++f) {
      for (std::size_t b = 0; b < frontier_end && !span.full(); ++b) {
        // [f, b] = -[b, f]: inside the frontier each pair is visited once.
        if (b >= frontier_begin && b <= f) continue;
        comm.noalias() = span[f] * span[b];
        comm.noalias() -= span[b] * span[f];
        // Basis elements have unit norm, so the commutator is at most 2.
        span.offer(comm, 1.0);
      }
    }
    frontier_begin = frontier_end;
    frontier_end = span.size();
  }

  report.hit_cap = span.full();
  report.dimension = span.size();
  report.max_residual_discarded = span.max_discarded();
  ClosureResult out;
  out.basis.dim_space = static_cast<std::size_t>(n);
  out.basis.elements = span.release();
  out.report = report;
  return out;
}

std::size_t commutant_dimension_full(const OperatorBasis& basis, double tol_rank,
                                     std::size_t cap) {
  if (basis.elements.empty()) throw InputError("commutant of an empty basis");
  const auto n = static_cast<Index>(basis.dim_space);
  check_cap(basis.dim_space, cap);
  const Index nn = n * n;

  // With vec column-major, ad_B = I (x) B - B^T (x) I, hence
  // ad_B^dagger ad_B = I (x) B^dagger B + (conj(B) B^T) (x) I
  //                    - B^T (x) B^dagger - conj(B) (x) B.
  MatrixXcd gram = MatrixXcd::Zero(nn, nn);
  MatrixXcd left = MatrixXcd::Zero(n, n);
  MatrixXcd right = MatrixXcd::Zero(n, n);
  for (const auto& b : basis.elements) {
    left.noalias() += b.adjoint() * b;
    right.noalias() += b.conjugate() * b.transpose();
    const MatrixXcd b_adj = b.adjoint();
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const Complex bt = b(j, i);
        const Complex bc = std::conj(b(i, j));
        auto block = gram.block(i * n, j * n, n, n);
        block.noalias() -= bt * b_adj + bc * b;
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    gram.block(i * n, i * n, n, n) += left;
    for (Index j = 0; j < n; ++j) {
      gram.block(i * n, j * n, n, n).diagonal().array() += right(i, j);
    }
  }

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("commutant eigensolver did not converge");
  }
  const auto& evals = solver.eigenvalues();
  return static_cast<std::size_t>((evals.array() < tol_rank).count());
}

std::size_t commutant_dimension(const OperatorBasis& basis, double tol_rank,
                                std::size_t cap) {
  if (basis.elements.empty()) throw InputError("commutant of an empty basis");
  const auto n = static_cast<Index>(basis.dim_space);
  check_cap(basis.dim_space, cap);

  // Generic Hermitian element with fixed pseudo-random weights.
  std::mt19937_64 gen(0x5eed'c0de'2024ULL);
  MatrixXcd generic = MatrixXcd::Zero(n, n);
  for (const auto& b : basis.elements) {
    const double w = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
    generic.noalias() += (w * kI) * b;
  }
  generic = (0.5 * (generic + generic.adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(generic);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("commutant eigensolver did not converge");
  }
  const auto& lambda = eig.eigenvalues();
  const MatrixXcd& u = eig.eigenvectors();

  // Eigenvalue clusters. A loose tie tolerance only enlarges the search space.
  const double tie = 1e-7 * std::max(1.0, lambda.cwiseAbs().maxCoeff());
  std::vector<Index> cluster(static_cast<std::size_t>(n));
  for (Index i = 1; i < n; ++i) {
    cluster[static_cast<std::size_t>(i)] =
        cluster[static_cast<std::size_t>(i - 1)] + (lambda(i) - lambda(i - 1) > tie ? 1 : 0);
  }
  std::vector<std::pair<Index, Index>> coords;  // (row, col) in one cluster
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c)
      if (cluster[static_cast<std::size_t>(r)] == cluster[static_cast<std::size_t>(c)])
        coords.emplace_back(r, c);
  const auto dim = static_cast<Index>(coords.size());

  std::vector<MatrixXcd> rotated;
  rotated.reserve(basis.elements.size());
  MatrixXcd left = MatrixXcd::Zero(n, n);
  MatrixXcd right = MatrixXcd::Zero(n, n);
  for (const auto& b : basis.elements) {
    rotated.push_back(u.adjoint() * b * u);
    const auto& rb = rotated.back();
    left.noalias() += rb.adjoint() * rb;
    right.noalias() += rb.conjugate() * rb.transpose();
  }

  // <ad E_a, ad E_b> for matrix units E_a = E_{r c}, summed over the basis.
  MatrixXcd gram(dim, dim);
  for (Index a = 0; a < dim; ++a) {
    const auto [ra, ca] = coords[static_cast<std::size_t>(a)];
    for (Index b = a; b < dim; ++b) {
      const auto [rb, cb] = coords[static_cast<std::size_t>(b)];
      Complex g{0.0, 0.0};
      if (ca == cb) g += left(ra, rb);
      if (ra == rb) g += right(ca, cb);
      for (const auto& m : rotated) {
        g -= std::conj(m(rb, ra)) * m(cb, ca) + std::conj(m(ca, cb)) * m(ra, rb);
      }
      gram(a, b) = g;
      gram(b, a) = std::conj(g);
    }
  }

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("commutant eigensolver did not converge");
  }
  return static_cast<std::size_t>((solver.eigenvalues().array() < tol_rank).count());
}

double span_residual(const OperatorBasis& basis, const MatrixXcd& target) {
  const double norm = target.norm();
  if (norm == 0.0) return 0.0;
  MatrixXcd v = target / norm;
  auto view = real_view(v);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis.elements) {
      const auto qv = real_view(q);
      view.noalias() -= qv.dot(view) * qv;
    }
  }
  return view.norm();
}

double invariant_subspace_residual(const OperatorBasis& basis,
                                   const std::vector<VectorXcd>& subspace) {
  if (subspace.empty()) return 0.0;
  const auto n = static_cast<Index>(basis.dim_space);
  MatrixXcd v(n, static_cast<Index>(subspace.size()));
  for (std::size_t k = 0; k < subspace.size(); ++k) v.col(static_cast<Index>(k)) = subspace[k];
  double worst = 0.0;
  for (const auto& b : basis.elements) {
    const MatrixXcd image = b * v;
    const MatrixXcd outside = image - v * (v.adjoint() * image);
    worst = std::max(worst, outside.colwise().norm().maxCoeff());
  }
  return worst;
}

double eigenline_residual(const OperatorBasis& basis,
                          const std::vector<VectorXcd>& lines) {
  double worst = 0.0;
  for (const auto& b : basis.elements) {
    for (const auto& v : lines) {
      const VectorXcd image = b * v;
      const Complex eigen = v.dot(image);
      worst = std::max(worst, (image - eigen * v).norm());
    }
  }
  return worst;
}

IsotypicSubspaces isotypic_subspaces(const Spectrum& spectrum,
                                     const InitialState& state, double tol_zero) {
  const auto projection = project_onto_levels(state, spectrum, tol_zero);
  const auto dim = static_cast<Index>(spectrum.dimension());
  IsotypicSubspaces out;
  for (std::size_t j = 0; j < spectrum.distinct(); ++j) {
    const auto members = spectrum.members(j);
    const auto& component = projection.components[j];
    if (!component) {
      for (auto x : members) {
        VectorXcd e = VectorXcd::Zero(dim);
        e(static_cast<Index>(x)) = 1.0;
        out.complement.push_back(std::move(e));
      }
      continue;
    }
    out.w0.push_back(*component);
    const auto m = static_cast<Index>(members.size());
    VectorXcd local(m);
    for (Index k = 0; k < m; ++k) local(k) = (*component)(static_cast<Index>(members[static_cast<std::size_t>(k)]));
    // Householder Q has `local` (up to phase) as its first column; the rest
    // spans the orthogonal complement inside the level.
    const Eigen::HouseholderQR<MatrixXcd> qr(local);
    const MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(m, m);
    for (Index col = 1; col < m; ++col) {
      VectorXcd v = VectorXcd::Zero(dim);
      for (Index k = 0; k < m; ++k) v(static_cast<Index>(members[static_cast<std::size_t>(k)])) = q(k, col);
      out.complement.push_back(std::move(v));
    }
  }
  return out;
}

bool frame_condition(const MatrixXcd& A, double tol_zero) {
  if (A.rows() != A.cols() || A.rows() < 2) {
    throw InputError("frame_condition needs a square matrix of size >= 2");
  }
  const Index k = A.rows() - 1;
  for (Index j = 1; j < k; ++j) {
    if (std::abs(A(0, j)) <= tol_zero || std::abs(A(j, 0)) <= tol_zero ||
        std::abs(A(j, k)) <= tol_zero || std::abs(A(k, j)) <= tol_zero) {
      return false;
    }
  }
  return true;
}

MatrixXcd matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
  MatrixXcd e = MatrixXcd::Zero(static_cast<Index>(d), static_cast<Index>(d));
  e(static_cast<Index>(i), static_cast<Index>(j)) = 1.0;
  return e;
}

MatrixUnits extract_matrix_units(const Eigen::VectorXd& diagonal,
                                 const MatrixXcd& A, double tol) {
  using Reason = MatrixUnitError::Reason;
  const Index d = diagonal.size();
  if (d < 2 || A.rows() != d || A.cols() != d) {
    throw InputError("extract_matrix_units: D and A must be d x d with d >= 2");
  }
  for (Index k = 0; k + 1 < d; ++k) {
    if (!(diagonal(k) > diagonal(k + 1))) {
      throw MatrixUnitError(Reason::NotDescending, "diagonal is not strictly decreasing");
    }
  }
  if (!frame_condition(A)) {
    throw MatrixUnitError(Reason::FrameViolated, "frame condition violated");
  }

  const bool exact = std::all_of(diagonal.data(), diagonal.data() + d, [](double v) {
    return std::abs(v) < 0x1p52 && std::floor(v) == v;
  });
  const auto same = [exact](double a, double b) {
    return exact ? a == b : std::abs(a - b) <= 1e-9;
  };
  // Spectral selector of ad_D at difference t (g(0) = 0).
  const auto select = [&](const MatrixXcd& m, double t) {
    MatrixXcd out = MatrixXcd::Zero(d, d);
    for (Index k = 0; k < d; ++k)
      for (Index l = 0; l < d; ++l)
        if (k != l && same(diagonal(k) - diagonal(l), t)) out(k, l) = m(k, l);
    return out;
  };
  const auto bracket = [](const MatrixXcd& x, const MatrixXcd& y) -> MatrixXcd {
    return x * y - y * x;
  };
  // Partner k (0 < k < last) with D_k - D_last == t, or -1.
  const Index first = 0;
  const Index last = d - 1;
  const auto partner = [&](double t) -> Index {
    for (Index k = 1; k < last; ++k)
      if (same(diagonal(k) - diagonal(last), t)) return k;
    return -1;
  };

  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  const double tol_zero = kDefaultTolZero * scale;
  if (std::abs(A(first, last)) <= tol_zero || std::abs(A(last, first)) <= tol_zero) {
    throw MatrixUnitError(Reason::CornerZero,
                          "corner entries A(1,d) and A(d,1) must be nonzero");
  }

  std::vector<MatrixXcd> units(static_cast<std::size_t>(d * d));
  std::vector<bool> have(units.size(), false);
  const auto put = [&](Index i, Index j, MatrixXcd e) {
    units[static_cast<std::size_t>(i * d + j)] = std::move(e);
    have[static_cast<std::size_t>(i * d + j)] = true;
  };
  const auto unit = [&](Index i, Index j) -> const MatrixXcd& {
    return units[static_cast<std::size_t>(i * d + j)];
  };
  const auto has = [&](Index i, Index j) { return have[static_cast<std::size_t>(i * d + j)]; };
  const auto solve_pair = [&](Complex a11, Complex a12, Complex a21, Complex a22,
                              const MatrixXcd& v1, const MatrixXcd& v2, Index i1,
                              Index j1, Index i2, Index j2) {
    // [v1; v2] = [[a11, a12], [a21, a22]] [E_{i1 j1}; E_{i2 j2}]
    const Complex det = a11 * a22 - a12 * a21;
    if (std::abs(det) <= tol_zero * scale) {
      throw MatrixUnitError(Reason::Ambiguous,
                            "coinciding eigenvalue differences cannot be separated");
    }
    put(i1, j1, (a22 * v1 - a12 * v2) / det);
    put(i2, j2, (a11 * v2 - a21 * v1) / det);
  };

  put(first, last, select(A, diagonal(first) - diagonal(last)) / A(first, last));
  put(last, first, select(A, diagonal(last) - diagonal(first)) / A(last, first));

  if (d > 2) {
    const MatrixXcd& e_fl = unit(first, last);
    const MatrixXcd& e_lf = unit(last, first);
    const Complex shift = A(first, first) - A(last, last);
    // R = sum_{l<last} A(last,l) E(first,l) - sum_{k>first} A(k,first) E(k,last)
    const MatrixXcd R = bracket(e_fl, A) + shift * e_fl;
    // L = sum_{k<last} A(k,last) E(k,first) - sum_{l>first} A(first,l) E(last,l)
    const MatrixXcd L = bracket(A, e_lf) + shift * e_lf;

    for (Index j = 1; j < last; ++j) {
      if (has(first, j)) continue;
      const double t = diagonal(first) - diagonal(j);
      const MatrixXcd v1 = select(R, t);
      const Index k = partner(t);
      if (k < 0) {
        put(first, j, v1 / A(last, j));
        continue;
      }
      // v1 = A(last,j) E(first,j) - A(k,first) E(k,last)
      // v2 = -A(first,j) E(first,j) - A(k,last) E(k,last)
      const MatrixXcd v2 = bracket(e_fl, select(L, -(diagonal(first) - diagonal(k))));
      solve_pair(A(last, j), -A(k, first), -A(first, j), -A(k, last), v1, v2,
                 first, j, k, last);
    }
    for (Index k = 1; k < last; ++k) {
      if (!has(k, last)) put(k, last, -select(R, diagonal(k) - diagonal(last)) / A(k, first));
    }

    for (Index j = 1; j < last; ++j) {
      if (has(j, first)) continue;
      const double t = diagonal(j) - diagonal(first);
      const MatrixXcd w1 = select(L, t);
      const Index k = partner(-t);
      if (k < 0) {
        put(j, first, w1 / A(j, last));
        continue;
      }
      // w1 = A(j,last) E(j,first) - A(first,k) E(last,k)
      // w2 = -A(j,first) E(j,first) - A(last,k) E(last,k)
      const MatrixXcd w2 = bracket(select(R, diagonal(first) - diagonal(k)), e_lf);
      solve_pair(A(j, last), -A(first, k), -A(j, first), -A(last, k), w1, w2,
                 j, first, last, k);
    }
    for (Index k = 1; k < last; ++k) {
      if (!has(last, k)) put(last, k, -select(L, diagonal(last) - diagonal(k)) / A(first, k));
    }

    // Remaining units, including the ones already on the frame, from E_ij = [E_i1, E_1j].
    for (Index i = 1; i < d; ++i)
      for (Index j = 1; j < d; ++j)
        if (i != j) put(i, j, bracket(unit(i, first), unit(first, j)));
  }

  MatrixUnits out;
  out.d = static_cast<std::size_t>(d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double dev =
          (unit(i, j) - matrix_unit(out.d, static_cast<std::size_t>(i), static_cast<std::size_t>(j)))
              .cwiseAbs()
              .maxCoeff();
      out.max_deviation = std::max(out.max_deviation, dev);
    }
  }
  out.units = std::move(units);
  if (out.max_deviation > tol) {
    throw MatrixUnitError(Reason::Inaccurate,
                          "recovered matrix units deviate by " +
                              std::to_string(out.max_deviation));
  }
  return out;
}

}  // namespace gmqaoa
