#include "krein/gram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace krein {

namespace {

ComplexMatrix half_gram(const VectorFamily& fam, Half h) {
  const auto& idx = fam.indices(h);
  const auto k = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      g(i, j) = indefinite_inner(fam.vectors[idx[static_cast<std::size_t>(i)]],
                                 fam.vectors[idx[static_cast<std::size_t>(j)]],
                                 fam.space->metric);
    }
  }
  return g;
}

}  // namespace

GramPair gram_matrices(const VectorFamily& fam) {
  GramPair gp;
  gp.g_plus = half_gram(fam, Half::Plus);
  gp.g_minus = half_gram(fam, Half::Minus);
#ifdef KREIN_INJECT_GMINUS_SIGN_FLIP
  gp.g_minus = -gp.g_minus;
#endif
  if (gp.g_plus.size() > 0) {
    const SingularExtremes e = singular_extremes(gp.g_plus);
    gp.norm_plus = e.sigma_max;
    gp.sigma_min_plus = e.sigma_min;
  }
  if (gp.g_minus.size() > 0) {
    const SingularExtremes e = singular_extremes(gp.g_minus);
    gp.norm_minus = e.sigma_max;
    gp.sigma_min_minus = e.sigma_min;
  }
  return gp;
}

BesselBounds bessel_from_gram(const GramPair& gp) {
  return {gp.norm_plus, gp.norm_minus};
}

double absolute_sum_bound(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, "absolute_sum_bound: matrix not square");
  }
  const double dev = hermitian_deviation(m);
  if (dev > tol.sym_tol) {
    throw Error(ErrorCode::NotHermitian,
                "absolute_sum_bound: relative deviation " + std::to_string(dev),
                dev);
  }
  const double sum = m.cwiseAbs().sum();
  const double norm = spectral_norm(m);
  if (norm > sum * (1.0 + 1e-12)) {
    throw std::logic_error("absolute_sum_bound: spectral norm exceeds sum");
  }
  return sum;
}

std::optional<double> absolute_sum_bessel_test(const VectorFamily& fam) {
  double sum = 0.0;
  for (const auto& fj : fam.vectors) {
    for (const auto& fn : fam.vectors) {
      sum += std::abs(indefinite_inner(fj, fn, fam.space->metric));
    }
  }
  if (!std::isfinite(sum)) return std::nullopt;
  return sum;
}

GramInvertibility gram_invertibility(const GramPair& gp,
                                     const Tolerances& tol) {
  GramInvertibility out;
  if (gp.g_plus.size() > 0) {
    out.sigma_min_plus = gp.sigma_min_plus;
    out.ratio_plus = gp.norm_plus > 0.0 ? gp.sigma_min_plus / gp.norm_plus : 0.0;
    out.plus = gp.sigma_min_plus > tol.rank_tol * gp.norm_plus;
  }
  if (gp.g_minus.size() > 0) {
    out.sigma_min_minus = gp.sigma_min_minus;
    out.ratio_minus =
        gp.norm_minus > 0.0 ? gp.sigma_min_minus / gp.norm_minus : 0.0;
    out.minus = gp.sigma_min_minus > tol.rank_tol * gp.norm_minus;
  }
  return out;
}

}  // namespace krein
