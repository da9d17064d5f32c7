#include "krein/family.hpp"

#include <algorithm>
#include <string>

namespace krein {

namespace {

std::size_t rank_or_zero(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) return 0;
  return numeric_rank(a, tol);
}

}  // namespace

ComplexMatrix VectorFamily::half_matrix(Half h) const {
  const auto& idx = indices(h);
  ComplexMatrix out(static_cast<Eigen::Index>(space->dim()),
                    static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = vectors[idx[k]];
  }
  return out;
}

ComplexMatrix VectorFamily::half_canonical(Half h) const {
  const auto rows = static_cast<Eigen::Index>(space->fd.half_dim(h));
  const ComplexMatrix ambient = half_matrix(h);
  if (h == Half::Plus) return space->fd.w_inv.topRows(rows) * ambient;
  return space->fd.w_inv.bottomRows(rows) * ambient;
}

VectorFamily split_indices(std::vector<KreinVector> vectors, SpacePtr space) {
  VectorFamily fam;
  fam.space = std::move(space);
  const KreinSpace& s = *fam.space;
  const double tol = s.tol().rank_tol;
  fam.neutral.resize(vectors.size(), false);
  for (std::size_t n = 0; n < vectors.size(); ++n) {
    if (static_cast<std::size_t>(vectors[n].size()) != s.dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "split_indices: vector " + std::to_string(n) +
                      " has length " + std::to_string(vectors[n].size()));
    }
    const double self = indefinite_inner(vectors[n], vectors[n], s.metric).real();
    const double jn = j_norm(vectors[n], s);
    if (std::abs(self) <= tol * jn * jn) {
      fam.neutral[n] = true;
      fam.has_neutral = true;
      fam.i_plus.push_back(n);
    } else if (self > 0.0) {
      fam.i_plus.push_back(n);
    } else {
      fam.i_minus.push_back(n);
    }
  }
  fam.vectors = std::move(vectors);
  return fam;
}

std::vector<bool> subspace_membership(const VectorFamily& fam) {
  const KreinSpace& s = *fam.space;
  const double tol = s.tol().rank_tol;
  std::vector<bool> verdict(fam.size(), false);
  for (Half h : {Half::Plus, Half::Minus}) {
    for (std::size_t n : fam.indices(h)) {
      const KreinVector& f = fam.vectors[n];
      verdict[n] = off_half_residual(f, h, s) <= tol * j_norm(f, s);
    }
  }
  return verdict;
}

bool membership_clean(const VectorFamily& fam) {
  const auto verdict = subspace_membership(fam);
  return std::all_of(verdict.begin(), verdict.end(), [](bool b) { return b; });
}

SynthesisResult synthesis(const VectorFamily& fam,
                          const CoefficientSequence& c) {
  if (static_cast<std::size_t>(c.plus.size()) != fam.i_plus.size() ||
      static_cast<std::size_t>(c.minus.size()) != fam.i_minus.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "synthesis: coefficient lengths do not match the index split");
  }
  return {fam.half_matrix(Half::Plus) * c.plus,
          fam.half_matrix(Half::Minus) * c.minus};
}

CoefficientSequence analysis(const VectorFamily& fam, const KreinVector& f) {
  const KreinSpace& s = *fam.space;
  if (static_cast<std::size_t>(f.size()) != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "analysis: vector length");
  }
  CoefficientSequence out;
  out.plus.resize(static_cast<Eigen::Index>(fam.i_plus.size()));
  out.minus.resize(static_cast<Eigen::Index>(fam.i_minus.size()));
  for (std::size_t k = 0; k < fam.i_plus.size(); ++k) {
    out.plus(static_cast<Eigen::Index>(k)) =
        indefinite_inner(f, fam.vectors[fam.i_plus[k]], s.metric);
  }
  for (std::size_t k = 0; k < fam.i_minus.size(); ++k) {
    out.minus(static_cast<Eigen::Index>(k)) =
        indefinite_inner(f, fam.vectors[fam.i_minus[k]], s.metric);
  }
  return out;
}

Completeness completeness(const VectorFamily& fam) {
  const KreinSpace& s = *fam.space;
  const Tolerances& tol = s.tol();
  Completeness c;
  c.plus = rank_or_zero(s.fd.p_plus * fam.half_matrix(Half::Plus), tol) == s.fd.p;
  c.minus = rank_or_zero(s.fd.p_minus * fam.half_matrix(Half::Minus), tol) == s.fd.q;

  ComplexMatrix all(static_cast<Eigen::Index>(s.dim()),
                    static_cast<Eigen::Index>(fam.size()));
  for (std::size_t n = 0; n < fam.size(); ++n) {
    all.col(static_cast<Eigen::Index>(n)) = fam.vectors[n];
  }
  c.total = rank_or_zero(all, tol) == s.dim();
  return c;
}

}  // namespace krein
