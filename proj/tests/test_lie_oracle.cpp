#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gmqaoa/dla_analytic.hpp"
#include "gmqaoa/errors.hpp"
#include "gmqaoa/lie_oracle.hpp"
#include "gmqaoa/problems.hpp"

using namespace gmqaoa;
using Eigen::MatrixXcd;

namespace {

constexpr Complex kI{0.0, 1.0};

ClosureResult gm_closure(const ObjectiveTable& obj, const InitialState& xi) {
  const auto g = gm_generators(obj, xi);
  return lie_closure({g.i_hp, g.i_gm}, kDefaultTolIndep, kDefaultClosureCap);
}

MatrixXcd random_hermitian(std::mt19937_64& gen, Eigen::Index d) {
  std::normal_distribution<double> normal;
  MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(normal(gen), normal(gen));
  return a + a.adjoint();
}

}  // namespace

TEST_CASE("GM generators") {
  const auto g = gm_generators(ObjectiveTable(1, 2, {0, 1}), uniform_state(1, 2));
  MatrixXcd gm = kI * g.i_gm;  // i (i G_M) = -G_M
  CHECK((gm - 0.5 * MatrixXcd::Ones(2, 2)).norm() < 1e-15);
  CHECK(g.i_hp(1, 1) == kI);
  CHECK(g.i_hp(0, 1) == Complex(0, 0));

  const auto p = gm_generators(maxcut_objective(path_graph(3)), uniform_state(3, 2));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(-kI * p.i_gm);  // G_M
  const auto ev = eig.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  for (Eigen::Index i = 1; i < ev.size(); ++i) CHECK(std::abs(ev(i)) < 1e-14);
  CHECK_THROWS_AS(gm_generators(maxcut_objective(path_graph(7)), uniform_state(7, 2)),
                  CapExceeded);
}

TEST_CASE("X mixer generator") {
  const auto x1 = x_mixer_generator(1);
  CHECK(x1(0, 1) == Complex(1, 0));
  CHECK(x1(1, 0) == Complex(1, 0));
  CHECK(x1(0, 0) == Complex(0, 0));
  const auto x2 = x_mixer_generator(2);
  for (Eigen::Index r = 0; r < 4; ++r) {
    CHECK(x2.row(r).sum() == Complex(2, 0));
    CHECK(x2(r, r) == Complex(0, 0));
    CHECK(x2(r, 3 - r) == Complex(0, 0));
  }
  CHECK_THROWS_AS(x_mixer_generator(2, 3), InputError);
}

TEST_CASE("centered cost generator is traceless") {
  const auto c = centered_cost_generator(maxcut_objective(path_graph(3)));
  CHECK(std::abs(c.trace()) < 1e-14);
  CHECK(c(2, 2) == kI);
}

TEST_CASE("closure basics") {
  const auto one = lie_closure({kI * MatrixXcd::Identity(3, 3)}, kDefaultTolIndep, 100);
  CHECK(one.report.dimension == 1);
  CHECK_THROWS_AS(lie_closure({MatrixXcd::Identity(2, 2)}, kDefaultTolIndep, 10), InputError);
  CHECK_THROWS_AS(lie_closure({}, kDefaultTolIndep, 10), InputError);

  const auto capped = gm_closure(maxcut_objective(path_graph(4)), uniform_state(4, 2));
  CHECK(capped.report.dimension == 17);
  CHECK(!capped.report.hit_cap);
  const auto g = gm_generators(maxcut_objective(path_graph(4)), uniform_state(4, 2));
  const auto limited = lie_closure({g.i_hp, g.i_gm}, kDefaultTolIndep, 5);
  CHECK(limited.report.dimension == 5);
  CHECK(limited.report.hit_cap);
}

TEST_CASE("closure basis is orthonormal and skew-Hermitian") {
  const auto c = gm_closure(maxcut_objective(cycle_graph(4)), uniform_state(4, 2));
  const auto& e = c.basis.elements;
  REQUIRE(e.size() == 10);
  for (std::size_t a = 0; a < e.size(); ++a) {
    CHECK((e[a] + e[a].adjoint()).norm() < 1e-12);
    for (std::size_t b = 0; b < e.size(); ++b) {
      const double ip = (e[a].adjoint() * e[b]).trace().real();
      CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("closure contains its generators and is monotone") {
  std::mt19937_64 gen(9);
  // A random extra generator fills out u_N, so keep N small.
  for (const auto& g : {path_graph(2), path_graph(3), cycle_graph(3)}) {
    const auto obj = maxcut_objective(g);
    const auto gens = gm_generators(obj, uniform_state(obj.n(), 2));
    const auto c = lie_closure({gens.i_hp, gens.i_gm}, kDefaultTolIndep, kDefaultClosureCap);
    CHECK(span_residual(c.basis, gens.i_hp) < 1e-9);
    CHECK(span_residual(c.basis, gens.i_gm) < 1e-9);
    const auto only_hp = lie_closure({gens.i_hp}, kDefaultTolIndep, kDefaultClosureCap);
    CHECK(only_hp.report.dimension <= c.report.dimension);
    const auto h = obj.size();
    const MatrixXcd extra = kI * random_hermitian(gen, static_cast<Eigen::Index>(h));
    const auto more =
        lie_closure({gens.i_hp, gens.i_gm, extra}, kDefaultTolIndep, kDefaultClosureCap);
    CHECK(more.report.dimension >= c.report.dimension);
  }
}

TEST_CASE("uniform closures have dimension d^2 + 1") {
  for (const auto& g : {path_graph(2), path_graph(3), path_graph(4), cycle_graph(4),
                        cycle_graph(5), complete_graph(4), house_graph()}) {
    const auto obj = maxcut_objective(g);
    const auto s = build_spectrum(obj);
    const auto xi = uniform_state(obj.n(), 2);
    const auto p = predict_dla(s, decompose_initial_state(xi, s));
    CHECK(gm_closure(obj, xi).report.dimension == p.dim);
  }
}

TEST_CASE("two-level instances") {
  const ObjectiveTable f(1, 2, {0, 1});
  Eigen::VectorXcd a(2);
  a << -1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  // Vanishing coefficient sum: u_2, matching the d^2 prediction.
  CHECK(gm_closure(f, InitialState(a)).report.dimension == 4);
  // Uniform state: still u_2, since W_0 is the whole space.
  CHECK(gm_closure(f, uniform_state(1, 2)).report.dimension == 4);
}

TEST_CASE("commutant examples") {
  OperatorBasis scalar{3, {kI * MatrixXcd::Identity(3, 3)}};
  CHECK(commutant_dimension(scalar) == 9);
  CHECK(commutant_dimension_full(scalar) == 9);
  CHECK_THROWS_AS(commutant_dimension(OperatorBasis{}), InputError);

  const auto p3 = gm_closure(maxcut_objective(path_graph(3)), uniform_state(3, 2));
  CHECK(commutant_dimension(p3.basis) == 12);
  const auto toy = gm_closure(ObjectiveTable(1, 2, {0, 1}), uniform_state(1, 2));
  CHECK(commutant_dimension(toy.basis) == 1);
  const auto basis000 = gm_closure(maxcut_objective(path_graph(3)), basis_state(8, 0));
  CHECK(commutant_dimension(basis000.basis) == 22);
}

TEST_CASE("reduced commutant solver agrees with the full operator") {
  std::mt19937_64 gen(21);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const auto dim = dense_size(n, 2);
    std::vector<double> values(dim);
    for (auto& v : values) v = static_cast<double>(gen() % 3);
    Eigen::VectorXcd a(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = trial % 2 ? Complex(normal(gen), 0) : 1.0;
    a.normalize();
    const auto c = gm_closure(ObjectiveTable(n, 2, values), InitialState(a));
    CHECK(commutant_dimension(c.basis) == commutant_dimension_full(c.basis));
  }
  const auto x = lie_closure({centered_cost_generator(maxcut_objective(path_graph(4))),
                              kI * x_mixer_generator(4)},
                             kDefaultTolIndep, kDefaultClosureCap);
  CHECK(commutant_dimension(x.basis) == commutant_dimension_full(x.basis));
}

TEST_CASE("isotypic subspaces are invariant") {
  for (const auto& g : {path_graph(3), cycle_graph(4), house_graph()}) {
    const auto obj = maxcut_objective(g);
    const auto xi = uniform_state(obj.n(), 2);
    const auto s = build_spectrum(obj);
    const auto c = gm_closure(obj, xi);
    const auto iso = isotypic_subspaces(s, xi);
    CHECK(iso.w0.size() == s.distinct());
    CHECK(iso.w0.size() + iso.complement.size() == obj.size());
    CHECK(invariant_subspace_residual(c.basis, iso.w0) < 1e-9);
    CHECK(eigenline_residual(c.basis, iso.complement) < 1e-8);
  }
}

TEST_CASE("invariance residual sanity") {
  const auto c = gm_closure(maxcut_objective(path_graph(3)), uniform_state(3, 2));
  std::vector<Eigen::VectorXcd> full;
  for (Eigen::Index i = 0; i < 8; ++i) full.push_back(Eigen::VectorXcd::Unit(8, i));
  CHECK(invariant_subspace_residual(c.basis, full) == 0.0);
  std::mt19937_64 gen(2);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(8);
  for (Eigen::Index i = 0; i < 8; ++i) v(i) = Complex(normal(gen), normal(gen));
  v.normalize();
  CHECK(invariant_subspace_residual(c.basis, {v}) > 0.1);
  CHECK(eigenline_residual(c.basis, {v}) > 0.1);
}

TEST_CASE("frame condition") {
  Eigen::VectorXd cvec(3);
  cvec << 0.5, std::sqrt(0.5), 0.5;
  const MatrixXcd gm0 = -(cvec * cvec.transpose()).cast<Complex>();
  CHECK(frame_condition(gm0));
  MatrixXcd holed = MatrixXcd::Ones(3, 3);
  holed(0, 1) = 0.0;
  CHECK(!frame_condition(holed));
  MatrixXcd two = MatrixXcd::Zero(2, 2);
  CHECK(frame_condition(two));
}

TEST_CASE("matrix units for a 2 x 2 pair") {
  Eigen::VectorXd dvec(2);
  dvec << 1, 0;
  const auto u = extract_matrix_units(dvec, MatrixXcd::Ones(2, 2));
  CHECK((u.at(0, 1) - matrix_unit(2, 0, 1)).norm() == 0.0);
  CHECK((u.at(1, 0) - matrix_unit(2, 1, 0)).norm() == 0.0);
}

TEST_CASE("matrix units for random frames") {
  std::mt19937_64 gen(4);
  Eigen::VectorXd dvec(3);
  dvec << 2, 1, 0;
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXcd a = random_hermitian(gen, 3);
    REQUIRE(frame_condition(a));
    const auto u = extract_matrix_units(dvec, a);
    CHECK(u.max_deviation < 1e-10);
  }
}

TEST_CASE("matrix units satisfy the unit commutation relations") {
  std::mt19937_64 gen(8);
  Eigen::VectorXd dvec(4);
  dvec << 3.5, 1.25, 0.5, -2.0;
  const auto u = extract_matrix_units(dvec, random_hermitian(gen, 4));
  const std::size_t d = 4;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          if (i == j || k == l) continue;
          const MatrixXcd lhs = u.at(i, j) * u.at(k, l) - u.at(k, l) * u.at(i, j);
          MatrixXcd rhs = MatrixXcd::Zero(4, 4);
          if (j == k) rhs += matrix_unit(d, i, l);
          if (l == i) rhs -= matrix_unit(d, k, j);
          CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
        }
}

TEST_CASE("matrix units with equally spaced levels") {
  std::mt19937_64 gen(6);
  for (std::size_t d = 3; d <= 6; ++d) {
    Eigen::VectorXd dvec(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) dvec(static_cast<Eigen::Index>(k)) = static_cast<double>(d - 1 - k);
    const auto u = extract_matrix_units(dvec, random_hermitian(gen, static_cast<Eigen::Index>(d)));
    CHECK(u.max_deviation < 1e-9);
  }
}

TEST_CASE("matrix units from the restricted P3 generators") {
  const auto obj = maxcut_objective(path_graph(3));
  const auto s = build_spectrum(obj);
  const auto r = restricted_generators(s, decompose_initial_state(uniform_state(3, 2), s));
  const Eigen::VectorXd dvec = r.h_p0.diagonal();
  const MatrixXcd a = r.g_m0.cast<Complex>();
  const auto u = extract_matrix_units(dvec, a);
  CHECK(u.max_deviation < 1e-10);
  const MatrixXcd dmat = r.h_p0.cast<Complex>();
  const auto c = lie_closure({kI * dmat, kI * a}, kDefaultTolIndep, kDefaultClosureCap);
  CHECK(c.report.dimension == 9);
}

TEST_CASE("matrix unit errors") {
  Eigen::VectorXd up(3);
  up << 0, 1, 2;
  try {
    extract_matrix_units(up, MatrixXcd::Ones(3, 3));
    FAIL("expected an error");
  } catch (const MatrixUnitError& e) {
    CHECK(e.reason() == MatrixUnitError::Reason::NotDescending);
  }
  Eigen::VectorXd down(3);
  down << 2, 1, 0;
  MatrixXcd holed = MatrixXcd::Ones(3, 3);
  holed(1, 2) = 0.0;
  try {
    extract_matrix_units(down, holed);
    FAIL("expected an error");
  } catch (const MatrixUnitError& e) {
    CHECK(e.reason() == MatrixUnitError::Reason::FrameViolated);
  }
  MatrixXcd corner = MatrixXcd::Ones(3, 3);
  corner(0, 2) = 0.0;
  try {
    extract_matrix_units(down, corner);
    FAIL("expected an error");
  } catch (const MatrixUnitError& e) {
    CHECK(e.reason() == MatrixUnitError::Reason::CornerZero);
  }
}
