#include "gmqaoa/dla_analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "gmqaoa/errors.hpp"

namespace gmqaoa {

namespace {

std::vector<double> supported_values(const Spectrum& spectrum,
                                     const LevelOverlaps& overlaps) {
  std::vector<double> out;
  out.reserve(overlaps.d());
  for (auto j : overlaps.supported_levels) out.push_back(spectrum.levels[j].value);
  return out;
}

void require_consistent(const Spectrum& spectrum, const LevelOverlaps& overlaps) {
  if (overlaps.c.size() != spectrum.distinct()) {
    throw InputError("level overlaps do not belong to this spectrum");
  }
}

}  // namespace

std::string to_string(DlaBranch branch) {
  return branch == DlaBranch::SumNonzero ? "sum_c_nonzero" : "sum_c_zero";
}

RestrictedGenerators restricted_generators(const Spectrum& spectrum,
                                           const LevelOverlaps& overlaps) {
  require_consistent(spectrum, overlaps);
  const auto d = static_cast<Eigen::Index>(overlaps.d());
  if (d == 0) throw InputError("initial state has no supported level");
  Eigen::VectorXd lambda(d);
  Eigen::VectorXd c(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto j = overlaps.supported_levels[static_cast<std::size_t>(i)];
    lambda(i) = spectrum.levels[j].value;
    c(i) = overlaps.c[j];
  }
  return {lambda.asDiagonal().toDenseMatrix(), -(c * c.transpose())};
}

DlaPrediction predict_dla(const Spectrum& spectrum, const LevelOverlaps& overlaps,
                          double tol_zero) {
  require_consistent(spectrum, overlaps);
  DlaPrediction out;
  out.d = overlaps.d();
  if (out.d == 0) throw InputError("initial state has no supported level");
  for (auto j : overlaps.supported_levels) {
    out.sum_c += overlaps.c[j];
    out.sum_c_squared += overlaps.c[j] * overlaps.c[j];
  }
  out.branch = std::abs(out.sum_c) > tol_zero ? DlaBranch::SumNonzero
                                              : DlaBranch::SumZero;
  out.center_dim = out.branch == DlaBranch::SumNonzero ? 2 : 1;
  out.dim = out.d * out.d - 1 + out.center_dim;
  out.semisimple = "su_" + std::to_string(out.d);
  out.abelian = out.center_dim == 2 ? "u_1^2" : "u_1";

  if (out.d == 1) {
    out.degenerate = true;
    // G_M = -|xi><xi| and H_P agrees with lambda_1 |xi><xi| on W_0, so the
    // two are dependent exactly when H_P vanishes on the complement of xi.
    bool hp_vanishes_off_xi = true;
    for (std::size_t j = 0; j < spectrum.distinct(); ++j) {
      const bool supported = overlaps.xi_components[j].has_value();
      const auto free_dim = spectrum.levels[j].multiplicity - (supported ? 1 : 0);
      if (free_dim > 0 && spectrum.levels[j].value != 0.0) hp_vanishes_off_xi = false;
    }
    out.span_dim = hp_vanishes_off_xi ? 1 : 2;
  }
  return out;
}

CommutantPrediction predict_commutant(const Spectrum& spectrum,
                                      const LevelOverlaps& overlaps) {
  require_consistent(spectrum, overlaps);
  std::size_t dim = 1;
  for (std::size_t j = 0; j < spectrum.distinct(); ++j) {
    const auto n_j = spectrum.levels[j].multiplicity;
    const auto free_dim = overlaps.xi_components[j] ? n_j - 1 : n_j;
    dim += free_dim * free_dim;
  }
  return {dim};
}

LossStatsPrediction predict_loss_stats(const Spectrum& spectrum,
                                       const LevelOverlaps& overlaps,
                                       double tol_zero) {
  require_consistent(spectrum, overlaps);
  const auto lambda = supported_values(spectrum, overlaps);
  const auto d = static_cast<double>(lambda.size());
  if (lambda.empty()) throw InputError("initial state has no supported level");

  LossStatsPrediction out;
  for (double l : lambda) {
    out.L1 += l;
    out.L2 += l * l;
  }
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      pair_sum += (lambda[i] - lambda[j]) * (lambda[i] - lambda[j]);

  out.zeta_mean = out.L1 / d;
  out.zeta_var = pair_sum / (d * d);
  out.p_su_rho = 1.0 - 1.0 / d;
  out.p_su_hp = d * out.zeta_var;
  out.loss_variance = out.zeta_var / (d + 1.0);
  if (predict_dla(spectrum, overlaps, tol_zero).center_dim == 2) {
    out.expected_loss = out.L1 / (d * d);
  }
  return out;
}

std::pair<std::size_t, std::size_t> isotypic_summary(const Spectrum& spectrum,
                                                     const LevelOverlaps& overlaps) {
  require_consistent(spectrum, overlaps);
  return {overlaps.d(), spectrum.dimension() - overlaps.d()};
}

std::size_t slocal_bound(int n, int s, std::size_t m, std::size_t T) {
  if (n < 0 || s < 0 || s > n) throw std::invalid_argument("slocal_bound: need 0 <= s <= n");
  // C(n, s) computed incrementally; exact while it fits in 64 bits.
  long double binom = 1.0L;
  for (int k = 1; k <= s; ++k) binom = binom * (n - s + k) / k;
  if (static_cast<long double>(T) > binom + 0.5L) {
    throw std::invalid_argument("slocal_bound: term count exceeds C(n, s)");
  }
  return m * T + 1;
}

double variance_lower_bound(double zeta_var, std::size_t range_bound) {
  return zeta_var / (static_cast<double>(range_bound) + 1.0);
}

}  // namespace gmqaoa
