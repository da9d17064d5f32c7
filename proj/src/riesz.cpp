#include "krein/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace krein {

std::string_view to_string(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "none";
    case FailureReason::IncompletePlus: return "incomplete_plus";
    case FailureReason::IncompleteMinus: return "incomplete_minus";
    case FailureReason::GramSingularPlus: return "gram_singular_plus";
    case FailureReason::GramSingularMinus: return "gram_singular_minus";
    case FailureReason::MixedMembership: return "mixed_membership";
  }
  return "none";
}

std::optional<FailureReason> failure_reason_from_string(std::string_view s) {
  for (auto r : {FailureReason::None, FailureReason::IncompletePlus,
                 FailureReason::IncompleteMinus, FailureReason::GramSingularPlus,
                 FailureReason::GramSingularMinus,
                 FailureReason::MixedMembership}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

namespace {

struct Extremes {
  double lo = 0.0;
  double hi = 0.0;
};

// Squared extreme singular values of a coordinate matrix whose columns are
// the family vectors: the extreme eigenvalues of Cᴴ C. More columns than
// rows means a nontrivial kernel, so the lower value is 0.
Extremes squared_extremes(const ComplexMatrix& c) {
  if (c.cols() == 0 || c.rows() == 0) return {};
  const SingularExtremes e = singular_extremes(c);
  const double lo = c.cols() > c.rows() ? 0.0 : e.sigma_min * e.sigma_min;
  return {lo, e.sigma_max * e.sigma_max};
}

void require_dims(const OperatorPair& ops, const KreinSpace& s) {
  if (static_cast<std::size_t>(ops.u_plus.rows()) != s.fd.p ||
      static_cast<std::size_t>(ops.u_minus.rows()) != s.fd.q) {
    throw Error(ErrorCode::DimensionMismatch,
                "operator pair is " + std::to_string(ops.u_plus.rows()) + "+" +
                    std::to_string(ops.u_minus.rows()) + ", space signature is (" +
                    std::to_string(s.fd.p) + "," + std::to_string(s.fd.q) + ")");
  }
}

ComplexMatrix inverse_adjoint(const ComplexMatrix& u, const Tolerances& tol) {
  try {
    return invert(u, tol).adjoint();
  } catch (const Error& e) {
    throw Error(ErrorCode::SingularOperator, e.what(), e.value());
  }
}

// Duals laid out at the positions of i_plus / i_minus.
VectorFamily duals_at(const OperatorPair& ops, SpacePtr space,
                      const std::vector<std::size_t>& i_plus,
                      const std::vector<std::size_t>& i_minus) {
  const KreinSpace& s = *space;
  const ComplexMatrix gp = s.fd.half_basis(Half::Plus) *
                           inverse_adjoint(ops.u_plus, s.tol());
  const ComplexMatrix gm = s.fd.half_basis(Half::Minus) *
                           inverse_adjoint(ops.u_minus, s.tol());
  std::vector<KreinVector> out(i_plus.size() + i_minus.size());
  for (std::size_t k = 0; k < i_plus.size(); ++k) {
    out[i_plus[k]] = gp.col(static_cast<Eigen::Index>(k));
  }
  for (std::size_t k = 0; k < i_minus.size(); ++k) {
    out[i_minus[k]] = gm.col(static_cast<Eigen::Index>(k));
  }
  return split_indices(std::move(out), std::move(space));
}

std::vector<std::size_t> iota_from(std::size_t start, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = start + k;
  return v;
}

void require_same_split(const VectorFamily& a, const VectorFamily& b) {
  if (a.i_plus != b.i_plus || a.i_minus != b.i_minus) {
    throw Error(ErrorCode::SplitMismatch,
                "families have different index splits");
  }
}

}  // namespace

OperatorPair OperatorPair::make(ComplexMatrix u_plus, ComplexMatrix u_minus,
                                const Tolerances& tol) {
  OperatorPair ops;
  auto fill = [&](const ComplexMatrix& u, double& norm, double& inv_norm,
                  const char* name) {
    if (u.rows() != u.cols()) {
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(name) + " is not square");
    }
    if (u.size() == 0) return;
    if (!all_finite(u)) {
      throw Error(ErrorCode::SingularOperator,
                  std::string(name) + " has non-finite entries");
    }
    const SingularExtremes e = singular_extremes(u);
    if (!(e.sigma_min > tol.rank_tol * e.sigma_max)) {
      throw Error(ErrorCode::SingularOperator,
                  std::string(name) + " sigma_min = " +
                      std::to_string(e.sigma_min),
                  e.sigma_min);
    }
    norm = e.sigma_max;
    inv_norm = 1.0 / e.sigma_min;
  };
  fill(u_plus, ops.norm_plus, ops.inv_norm_plus, "U+");
  fill(u_minus, ops.norm_minus, ops.inv_norm_minus, "U-");
  ops.u_plus = std::move(u_plus);
  ops.u_minus = std::move(u_minus);
  return ops;
}

VectorFamily construct_riesz(const OperatorPair& ops, SpacePtr space) {
  const KreinSpace& s = *space;
  require_dims(ops, s);
  OperatorPair::make(ops.u_plus, ops.u_minus, s.tol());
  const ComplexMatrix fp = s.fd.half_basis(Half::Plus) * ops.u_plus;
  const ComplexMatrix fm = s.fd.half_basis(Half::Minus) * ops.u_minus;
  std::vector<KreinVector> vs;
  vs.reserve(s.dim());
  for (Eigen::Index k = 0; k < fp.cols(); ++k) vs.emplace_back(fp.col(k));
  for (Eigen::Index k = 0; k < fm.cols(); ++k) vs.emplace_back(fm.col(k));
  return split_indices(std::move(vs), std::move(space));
}

VectorFamily dual_sequence(const OperatorPair& ops, SpacePtr space) {
  require_dims(ops, *space);
  const std::size_t p = space->fd.p;
  const std::size_t q = space->fd.q;
  return duals_at(ops, std::move(space), iota_from(0, p), iota_from(p, q));
}

double biorthogonality_residual(const VectorFamily& fam,
                                const VectorFamily& duals) {
  require_same_split(fam, duals);
  std::vector<int> sign(fam.size(), 1);
  for (std::size_t n : fam.i_minus) sign[n] = -1;
  double worst = 0.0;
  for (std::size_t n = 0; n < fam.size(); ++n) {
    for (std::size_t m = 0; m < duals.size(); ++m) {
      const Complex v =
          indefinite_inner(fam.vectors[n], duals.vectors[m], fam.space->metric);
      const double expected = n == m ? sign[n] : 0.0;
      worst = std::max(worst, std::abs(v - expected));
    }
  }
  return worst;
}

bool biorthogonality_check(const VectorFamily& fam,
                           const VectorFamily& duals) {
  const double residual = biorthogonality_residual(fam, duals);
  double max_f = 0.0;
  double max_g = 0.0;
  for (const auto& f : fam.vectors) max_f = std::max(max_f, j_norm(f, *fam.space));
  for (const auto& g : duals.vectors) max_g = std::max(max_g, j_norm(g, *duals.space));
  return residual <= fam.space->tol().rank_tol * max_f * max_g;
}

KreinVector reconstruct(const KreinVector& f, const VectorFamily& fam,
                        const VectorFamily& duals, Half side) {
  require_same_split(fam, duals);
  const KreinSpace& s = *fam.space;
  if (off_half_residual(f, side, s) > s.tol().rank_tol * j_norm(f, s)) {
    throw Error(ErrorCode::NotInSubspace,
                "reconstruct: vector is not in the requested half");
  }
  const double eps = side == Half::Plus ? 1.0 : -1.0;
  KreinVector out = KreinVector::Zero(f.size());
  for (std::size_t n : fam.indices(side)) {
    out += eps * indefinite_inner(f, duals.vectors[n], s.metric) * fam.vectors[n];
  }
  return out;
}

FrameBounds optimal_frame_bounds(const OperatorPair& ops) {
  FrameBounds fb;
  if (ops.u_plus.size() > 0) {
    fb.a = 1.0 / (ops.inv_norm_plus * ops.inv_norm_plus);
    fb.b = ops.norm_plus * ops.norm_plus;
  }
  if (ops.u_minus.size() > 0) {
    fb.a_prime = 1.0 / (ops.inv_norm_minus * ops.inv_norm_minus);
    fb.b_prime = ops.norm_minus * ops.norm_minus;
  }
  return fb;
}

FrameBounds frame_inequality_bounds(const VectorFamily& fam) {
  if (!membership_clean(fam)) {
    throw Error(ErrorCode::MixedMembership,
                "frame_inequality_bounds: family vectors leave their half");
  }
  const Extremes plus = squared_extremes(fam.half_canonical(Half::Plus));
  const Extremes minus = squared_extremes(fam.half_canonical(Half::Minus));
  return {plus.lo, plus.hi, minus.lo, minus.hi};
}

namespace {

FailureReason first_failure(bool clean, const Completeness& c, bool ok_plus,
                            bool ok_minus) {
  if (!clean) return FailureReason::MixedMembership;
  if (!c.plus) return FailureReason::IncompletePlus;
  if (!c.minus) return FailureReason::IncompleteMinus;
  if (!ok_plus) return FailureReason::GramSingularPlus;
  if (!ok_minus) return FailureReason::GramSingularMinus;
  return FailureReason::None;
}

}  // namespace

RieszVerdict riesz_via_inequalities(const VectorFamily& fam,
                                    const Tolerances& tol) {
  RieszVerdict v;
  const Completeness c = completeness(fam);
  v.complete_plus = c.plus;
  v.complete_minus = c.minus;
  const bool clean = membership_clean(fam);
  bool ok_plus = false;
  bool ok_minus = false;
  if (clean) {
    const FrameBounds fb = frame_inequality_bounds(fam);
    v.bounds_witness = fb;
    if (fam.i_plus.empty()) {
      v.margin_plus = 1.0;
      ok_plus = true;
    } else {
      v.margin_plus = fb.b > 0.0 ? fb.a / fb.b : 0.0;
      ok_plus = fb.a > tol.rank_tol * fb.b;
    }
    if (fam.i_minus.empty()) {
      v.margin_minus = 1.0;
      ok_minus = true;
    } else {
      v.margin_minus = fb.b_prime > 0.0 ? fb.a_prime / fb.b_prime : 0.0;
      ok_minus = fb.a_prime > tol.rank_tol * fb.b_prime;
    }
  }
  v.failure_reason = first_failure(clean, c, ok_plus, ok_minus);
  v.is_riesz = v.failure_reason == FailureReason::None;
  return v;
}

RieszVerdict riesz_via_gram(const VectorFamily& fam, const Tolerances& tol) {
  RieszVerdict v;
  const Completeness c = completeness(fam);
  v.complete_plus = c.plus;
  v.complete_minus = c.minus;
  const bool clean = membership_clean(fam);
  const GramPair gp = gram_matrices(fam);
  const GramInvertibility inv = gram_invertibility(gp, tol);
  v.margin_plus = inv.ratio_plus;
  v.margin_minus = inv.ratio_minus;
  if (clean) {
    // For a clean family, σ_min/σ_max of the Gram blocks are the frame
    // inequality constants.
    v.bounds_witness =
        FrameBounds{gp.sigma_min_plus, gp.norm_plus, gp.sigma_min_minus,
                    gp.norm_minus};
  }
  v.failure_reason = first_failure(clean, c, inv.plus, inv.minus);
  v.is_riesz = v.failure_reason == FailureReason::None;
  return v;
}

OperatorPair factor_riesz(const VectorFamily& fam, const Tolerances& tol) {
  const KreinSpace& s = *fam.space;
  if (!membership_clean(fam)) {
    throw Error(ErrorCode::NotRiesz, "family vectors leave their half");
  }
  if (fam.i_plus.size() != s.fd.p || fam.i_minus.size() != s.fd.q) {
    throw Error(ErrorCode::CountMismatch,
                "split (" + std::to_string(fam.i_plus.size()) + "," +
                    std::to_string(fam.i_minus.size()) + ") vs signature (" +
                    std::to_string(s.fd.p) + "," + std::to_string(s.fd.q) + ")");
  }
  try {
    return OperatorPair::make(fam.half_canonical(Half::Plus),
                              fam.half_canonical(Half::Minus), tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotRiesz, e.what(), e.value());
  }
}

RieszCertificate certify(const VectorFamily& fam, const Tolerances& tol) {
  OperatorPair ops = factor_riesz(fam, tol);
  VectorFamily duals = duals_at(ops, fam.space, fam.i_plus, fam.i_minus);
  const FrameBounds bounds = optimal_frame_bounds(ops);
  return {std::move(ops), fam, std::move(duals), bounds};
}

SpanOperator span_operator(const VectorFamily& h_fam,
                           const VectorFamily& g_fam, Half side,
                           const Tolerances& tol) {
  const std::size_t count = h_fam.indices(side).size();
  if (count != g_fam.indices(side).size()) {
    throw Error(ErrorCode::CountMismatch,
                "span_operator: h and g have different counts on this half");
  }
  if (!membership_clean(g_fam)) {
    throw Error(ErrorCode::MixedMembership,
                "span_operator: g-family vectors leave their half");
  }
  const FrameBounds hb = frame_inequality_bounds(h_fam);
  const double a = side == Half::Plus ? hb.a : hb.a_prime;
  const double h_upper = side == Half::Plus ? hb.b : hb.b_prime;
  const Completeness c = completeness(h_fam);
  const bool complete = side == Half::Plus ? c.plus : c.minus;
  if (!complete || count == 0 || !(a > tol.rank_tol * h_upper)) {
    throw Error(ErrorCode::LowerBoundZero,
                "span_operator: h-family has no positive lower Riesz bound", a);
  }
  const BesselBounds gb = bessel_from_gram(gram_matrices(g_fam));
  const double b = side == Half::Plus ? gb.b : gb.b_prime;

  SpanOperator out;
  out.op = g_fam.half_canonical(side) * invert(h_fam.half_canonical(side), tol);
  out.norm = spectral_norm(out.op);
  out.norm_bound = std::sqrt(b / a);
  if (out.norm > out.norm_bound * (1.0 + 1e-8)) {
    throw std::logic_error("span_operator: norm exceeds sqrt(B/A)");
  }
  return out;
}

}  // namespace krein
