#include "krein/krein_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace krein {

namespace {

void require_dim(const KreinVector& x, std::size_t n, const char* op) {
  if (static_cast<std::size_t>(x.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": vector has length " +
                    std::to_string(x.size()) + ", space has dimension " +
                    std::to_string(n));
  }
}

// First entry whose modulus is non-negligible becomes real positive.
void normalize_phase(Eigen::Ref<ComplexVector> v) {
  const double cutoff = 1e-8 * v.norm();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v(k));
    if (mag > cutoff) {
      v *= std::conj(v(k)) / mag;
      v(k) = Complex(mag, 0.0);
      return;
    }
  }
}

}  // namespace

KreinMetric::KreinMetric(ComplexMatrix g, Tolerances tol)
    : g_(std::move(g)), tol_(tol) {
  tol_.validate();
  if (g_.rows() != g_.cols()) {
    throw Error(ErrorCode::NonSquare, "metric must be square");
  }
  if (g_.size() == 0) {
    throw Error(ErrorCode::EmptyMatrix, "metric of dimension 0");
  }
  if (!all_finite(g_)) {
    throw Error(ErrorCode::DegenerateMetric, "metric has non-finite entries");
  }
  const double dev = hermitian_deviation(g_);
  if (dev > tol_.sym_tol) {
    throw Error(ErrorCode::NotHermitian,
                "metric relative deviation " + std::to_string(dev), dev);
  }
  const SingularExtremes ext = singular_extremes(g_);
  if (!(ext.sigma_min > tol_.rank_tol * ext.sigma_max)) {
    throw Error(ErrorCode::DegenerateMetric,
                "metric sigma_min = " + std::to_string(ext.sigma_min),
                ext.sigma_min);
  }
}

KreinMetric KreinMetric::from_signature(std::size_t p, std::size_t q,
                                        Tolerances tol) {
  ComplexMatrix g = ComplexMatrix::Zero(static_cast<Eigen::Index>(p + q),
                                        static_cast<Eigen::Index>(p + q));
  for (std::size_t k = 0; k < p + q; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    g(i, i) = k < p ? 1.0 : -1.0;
  }
  return KreinMetric(std::move(g), tol);
}

ComplexVector FundamentalDecomposition::half_coordinates(const KreinVector& x,
                                                         Half h) const {
  const auto n = static_cast<Eigen::Index>(half_dim(h));
  if (h == Half::Plus) return w_inv.topRows(n) * x;
  return w_inv.bottomRows(n) * x;
}

ComplexMatrix FundamentalDecomposition::half_basis(Half h) const {
  const auto n = static_cast<Eigen::Index>(half_dim(h));
  if (h == Half::Plus) return w.leftCols(n);
  return w.rightCols(n);
}

FundamentalDecomposition fundamental_decomposition(const KreinMetric& m) {
  const EigenDecomposition eig = hermitian_eig(m.matrix(), m.tolerances());
  const auto n = eig.eigenvalues.size();
  const double largest = eig.eigenvalues.cwiseAbs().maxCoeff();

  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(eig.eigenvalues(k)) <= m.tolerances().rank_tol * largest) {
      throw Error(ErrorCode::DegenerateMetric,
                  "eigenvalue " + std::to_string(eig.eigenvalues(k)) +
                      " is numerically zero",
                  eig.eigenvalues(k));
    }
  }

  // Positive class first, then negative; each descending by |λ|. The solver
  // returns ascending eigenvalues, and stable_sort keeps that order on ties.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const RealVector& lambda = eig.eigenvalues;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     const bool pa = lambda(a) > 0.0;
                     const bool pb = lambda(b) > 0.0;
                     if (pa != pb) return pa;
                     return std::abs(lambda(a)) > std::abs(lambda(b));
                   });

  FundamentalDecomposition fd;
  fd.eigenvalues.resize(n);
  ComplexMatrix v(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const Eigen::Index src = order[static_cast<std::size_t>(c)];
    v.col(c) = eig.eigenvectors.col(src);
    normalize_phase(v.col(c));
    fd.eigenvalues(c) = lambda(src);
    if (lambda(src) > 0.0) {
      ++fd.p;
      fd.j.push_back(1);
    } else {
      ++fd.q;
      fd.j.push_back(-1);
    }
  }

  const RealVector scale = fd.eigenvalues.cwiseAbs().cwiseSqrt();
  fd.w = v * scale.cwiseInverse().asDiagonal();
  fd.w_inv = scale.asDiagonal() * v.adjoint();

  const auto p = static_cast<Eigen::Index>(fd.p);
  const auto q = static_cast<Eigen::Index>(fd.q);
  fd.p_plus = v.leftCols(p) * v.leftCols(p).adjoint();
  fd.p_minus = v.rightCols(q) * v.rightCols(q).adjoint();
  return fd;
}

std::shared_ptr<const KreinSpace> KreinSpace::create(KreinMetric m) {
  FundamentalDecomposition fd = fundamental_decomposition(m);
  return std::make_shared<const KreinSpace>(
      KreinSpace{std::move(m), std::move(fd)});
}

Complex indefinite_inner(const KreinVector& x, const KreinVector& y,
                         const KreinMetric& m) {
  require_dim(x, m.dim(), "indefinite_inner");
  require_dim(y, m.dim(), "indefinite_inner");
  // Eigen's dot conjugates its left operand: yᴴ (G x).
  return y.dot(m.matrix() * x);
}

double j_norm(const KreinVector& x, const KreinSpace& s) {
  require_dim(x, s.dim(), "j_norm");
  return s.fd.canonical(x).norm();
}

double off_half_residual(const KreinVector& x, Half side,
                         const KreinSpace& s) {
  require_dim(x, s.dim(), "off_half_residual");
  const Half other = side == Half::Plus ? Half::Minus : Half::Plus;
  return s.fd.half_coordinates(x, other).norm();
}

bool is_orthonormal_basis(std::span<const KreinVector> vs,
                          const KreinMetric& m) {
  if (vs.size() != m.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "is_orthonormal_basis: expected " + std::to_string(m.dim()) +
                    " vectors, got " + std::to_string(vs.size()));
  }
  const double tol = m.tolerances().rank_tol;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const Complex v = indefinite_inner(vs[i], vs[j], m);
      if (i == j) {
        if (std::abs(v.imag()) > tol || std::abs(std::abs(v.real()) - 1.0) > tol) {
          return false;
        }
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool equality_via_pairings(const KreinVector& x, const KreinVector& y,
                           Half side, const KreinSpace& s) {
  const double tol = s.tol().rank_tol;
  const double nx = j_norm(x, s);
  const double ny = j_norm(y, s);
  if (off_half_residual(x, side, s) > tol * nx ||
      off_half_residual(y, side, s) > tol * ny) {
    throw Error(ErrorCode::NotInSubspace,
                "equality_via_pairings: argument outside the requested half");
  }
  const ComplexMatrix basis = s.fd.half_basis(side);
  const KreinVector diff = x - y;
  const double cutoff = tol * (nx + ny);
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    if (std::abs(indefinite_inner(diff, basis.col(k), s.metric)) > cutoff) {
      return false;
    }
  }
  return true;
}

}  // namespace krein
