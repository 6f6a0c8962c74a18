#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gmqaoa/dla_analytic.hpp"
#include "gmqaoa/errors.hpp"
#include "gmqaoa/problems.hpp"

using namespace gmqaoa;

namespace {

struct Instance {
  Spectrum spectrum;
  LevelOverlaps overlaps;
};

Instance uniform_instance(const ObjectiveTable& obj) {
  auto s = build_spectrum(obj);
  auto o = decompose_initial_state(uniform_state(obj.n(), obj.q()), s);
  return {std::move(s), std::move(o)};
}

Instance maxcut_uniform(const Graph& g) { return uniform_instance(maxcut_objective(g)); }

// n = 1, F = (0, 1), state with amplitudes (a0, a1).
Instance two_level(double a0, double a1) {
  auto s = build_spectrum(ObjectiveTable(1, 2, {0, 1}));
  Eigen::VectorXcd v(2);
  v << a0, a1;
  auto o = decompose_initial_state(InitialState(v), s);
  return {std::move(s), std::move(o)};
}

}  // namespace

TEST_CASE("restricted generators for P3 uniform") {
  const auto in = maxcut_uniform(path_graph(3));
  const auto r = restricted_generators(in.spectrum, in.overlaps);
  REQUIRE(r.h_p0.rows() == 3);
  CHECK(r.h_p0(0, 0) == 2);
  CHECK(r.h_p0(1, 1) == 1);
  CHECK(r.h_p0(2, 2) == 0);
  CHECK(r.h_p0(0, 1) == 0);
  CHECK(r.g_m0(0, 1) == doctest::Approx(-std::sqrt(8.0) / 8.0).epsilon(1e-14));
  CHECK(r.g_m0(1, 1) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(r.g_m0.trace() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK((r.g_m0 - r.g_m0.transpose()).norm() == 0.0);
}

TEST_CASE("restricted generators with one supported level") {
  const auto s = build_spectrum(maxcut_objective(path_graph(3)));
  const auto o = decompose_initial_state(basis_state(8, 2), s);
  const auto r = restricted_generators(s, o);
  REQUIRE(r.g_m0.rows() == 1);
  CHECK(r.g_m0(0, 0) == doctest::Approx(-1.0));
  CHECK(r.h_p0(0, 0) == 2);
}

TEST_CASE("DLA prediction for uniform states is d^2 + 1") {
  const auto house = maxcut_uniform(house_graph());
  const auto p = predict_dla(house.spectrum, house.overlaps);
  CHECK(p.d == 5);
  CHECK(p.dim == 26);
  CHECK(p.center_dim == 2);
  CHECK(p.branch == DlaBranch::SumNonzero);
  CHECK(p.algebra() == "su_5 + u_1^2");
  CHECK(!p.degenerate);
  for (int n = 2; n <= 8; ++n) {
    const auto in = maxcut_uniform(path_graph(n));
    const auto q = predict_dla(in.spectrum, in.overlaps);
    CHECK(q.d == static_cast<std::size_t>(n));
    CHECK(q.dim == static_cast<std::size_t>(n * n + 1));
    CHECK(q.dim == q.d * q.d - 1 + q.center_dim);
  }
  for (const auto& g : {cycle_graph(6), complete_graph(5), house_graph()}) {
    const auto in = maxcut_uniform(g);
    const auto q = predict_dla(in.spectrum, in.overlaps);
    CHECK(q.dim == q.d * q.d + 1);
    CHECK(q.sum_c_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two-level toy with vanishing coefficient sum") {
  const auto in = two_level(-1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  const auto p = predict_dla(in.spectrum, in.overlaps);
  CHECK(in.overlaps.c[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(in.overlaps.c[1] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(p.branch == DlaBranch::SumZero);
  CHECK(to_string(p.branch) == "sum_c_zero");
  CHECK(p.dim == 4);
  CHECK(p.center_dim == 1);
  CHECK(p.abelian == "u_1");
  CHECK(!predict_loss_stats(in.spectrum, in.overlaps).expected_loss.has_value());
}

TEST_CASE("degenerate single-level case reports the span dimension") {
  const auto s = build_spectrum(maxcut_objective(path_graph(3)));
  const auto p = predict_dla(s, decompose_initial_state(basis_state(8, 0), s));
  CHECK(p.degenerate);
  CHECK(p.dim == 2);
  REQUIRE(p.span_dim.has_value());
  CHECK(*p.span_dim == 2);
  // A constant zero objective makes iH_P vanish.
  const auto z = build_spectrum(ObjectiveTable(1, 2, {0, 0}));
  const auto pz = predict_dla(z, decompose_initial_state(uniform_state(1, 2), z));
  CHECK(pz.degenerate);
  CHECK(*pz.span_dim == 1);
}

TEST_CASE("commutant predictions") {
  const auto p3 = maxcut_uniform(path_graph(3));
  CHECK(predict_commutant(p3.spectrum, p3.overlaps).dim == 12);
  const auto toy = two_level(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  CHECK(predict_commutant(toy.spectrum, toy.overlaps).dim == 1);
  const auto s = build_spectrum(maxcut_objective(path_graph(3)));
  CHECK(predict_commutant(s, decompose_initial_state(basis_state(8, 0), s)).dim == 22);
}

TEST_CASE("uniform commutant stays below the block-diagonal bound") {
  for (const auto& g : {path_graph(5), cycle_graph(6), complete_graph(5), house_graph()}) {
    const auto in = maxcut_uniform(g);
    std::size_t expected = 1;
    std::size_t bound = 0;
    for (const auto& level : in.spectrum.levels) {
      expected += (level.multiplicity - 1) * (level.multiplicity - 1);
      bound += level.multiplicity * level.multiplicity;
    }
    const auto dim = predict_commutant(in.spectrum, in.overlaps).dim;
    CHECK(dim == expected);
    CHECK(dim <= bound);
  }
}

TEST_CASE("loss statistics for paths") {
  const auto p4 = maxcut_uniform(path_graph(4));
  const auto s4 = predict_loss_stats(p4.spectrum, p4.overlaps);
  CHECK(s4.zeta_var == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(s4.loss_variance == doctest::Approx(0.25).epsilon(1e-14));
  REQUIRE(s4.expected_loss.has_value());
  CHECK(*s4.expected_loss == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(s4.L1 == 6);
  CHECK(s4.L2 == 14);
  CHECK(s4.p_su_rho == doctest::Approx(0.75));

  const auto p3 = maxcut_uniform(path_graph(3));
  const auto s3 = predict_loss_stats(p3.spectrum, p3.overlaps);
  CHECK(s3.loss_variance == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(*s3.expected_loss == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const auto flat = uniform_instance(ObjectiveTable(2, 2, {5, 5, 5, 5}));
  CHECK(predict_loss_stats(flat.spectrum, flat.overlaps).loss_variance == 0.0);
}

TEST_CASE("loss statistic identities on random spectra") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> value(-4.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    std::vector<double> values(dense_size(n, 2));
    for (auto& v : values) v = value(gen);
    const auto in = uniform_instance(ObjectiveTable(n, 2, values));
    const auto s = predict_loss_stats(in.spectrum, in.overlaps);
    const double d = static_cast<double>(in.overlaps.d());
    double pair_sum = 0.0;
    for (const auto& a : in.spectrum.levels)
      for (const auto& b : in.spectrum.levels)
        if (a.value > b.value) pair_sum += (a.value - b.value) * (a.value - b.value);
    CHECK(s.p_su_hp == doctest::Approx(s.L2 - s.L1 * s.L1 / d).epsilon(1e-9));
    CHECK(s.p_su_hp == doctest::Approx(pair_sum / d).epsilon(1e-9));
    CHECK(s.loss_variance * (d + 1.0) == doctest::Approx(s.zeta_var).epsilon(1e-15));
  }
}

TEST_CASE("isotypic summaries") {
  const auto p3 = maxcut_uniform(path_graph(3));
  CHECK(isotypic_summary(p3.spectrum, p3.overlaps) == std::pair<std::size_t, std::size_t>{3, 5});
  const auto injective = uniform_instance(ObjectiveTable(2, 2, {0, 1, 2, 3}));
  CHECK(isotypic_summary(injective.spectrum, injective.overlaps) ==
        std::pair<std::size_t, std::size_t>{4, 0});
  const auto house = maxcut_uniform(house_graph());
  CHECK(isotypic_summary(house.spectrum, house.overlaps) ==
        std::pair<std::size_t, std::size_t>{5, 27});
}

TEST_CASE("s-local range bound") {
  CHECK(slocal_bound(5, 2, 1, 6) == 7);
  CHECK(slocal_bound(4, 2, 1, 0) == 1);
  // m-SAT counted per m-subset of variables: C <= C(n, m) clauses of width m.
  CHECK(slocal_bound(4, 3, 1, 4) == 5);
  CHECK_THROWS_AS(slocal_bound(3, 2, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(slocal_bound(3, 4, 1, 0), std::invalid_argument);
}

TEST_CASE("range bound gives a variance floor for MaxCut") {
  for (const auto& g : {path_graph(6), cycle_graph(7), complete_graph(6), house_graph()}) {
    const auto in = maxcut_uniform(g);
    const auto s = predict_loss_stats(in.spectrum, in.overlaps);
    const auto range = slocal_bound(g.vertex_count(), 2, 1, g.edge_count());
    CHECK(in.spectrum.distinct() <= range);
    const double floor = variance_lower_bound(s.zeta_var, range);
    CHECK(floor == doctest::Approx(s.zeta_var / (static_cast<double>(g.edge_count()) + 2.0)));
    CHECK(floor > 0.0);
    CHECK(s.loss_variance >= floor);
  }
}
