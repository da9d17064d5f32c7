#include "krein/numerics.hpp"

#include <cmath>
#include <string>

namespace krein {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NotInSubspace: return "NotInSubspace";
    case ErrorCode::SplitMismatch: return "SplitMismatch";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::MixedMembership: return "MixedMembership";
    case ErrorCode::NotRiesz: return "NotRiesz";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::LowerBoundZero: return "LowerBoundZero";
    case ErrorCode::DefectImpossible: return "DefectImpossible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BadFlags: return "BadFlags";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
      throw Error(ErrorCode::BadFlags,
                  std::string(name) + " must lie in (0, 1), got " +
                      std::to_string(v));
    }
  };
  check(rank_tol, "rank_tol");
  check(sym_tol, "sym_tol");
  check(recon_tol, "recon_tol");
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

namespace {

RealVector singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::NonSquare,
                std::string(op) + ": matrix is " + std::to_string(a.rows()) +
                    "x" + std::to_string(a.cols()));
  }
}

}  // namespace

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double hermitian_deviation(const ComplexMatrix& a) {
  const double norm = spectral_norm(a);
  if (norm == 0.0) return 0.0;
  return spectral_norm(a - a.adjoint()) / norm;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                 const Tolerances& tol) {
  require_square(a, "hermitian_eig");
  const double dev = hermitian_deviation(a);
  if (dev > tol.sym_tol) {
    throw Error(ErrorCode::NotHermitian,
                "relative deviation " + std::to_string(dev), dev);
  }
  if (a.size() == 0) return {};
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

SingularExtremes singular_extremes(const ComplexMatrix& a) {
  if (a.size() == 0) {
    throw Error(ErrorCode::EmptyMatrix, "singular_extremes of empty matrix");
  }
  const RealVector s = singular_values(a);
  return {s(s.size() - 1), s(0)};
}

std::size_t numeric_rank(const ComplexMatrix& a, const Tolerances& tol) {
  if (a.size() == 0) {
    throw Error(ErrorCode::EmptyMatrix, "numeric_rank of empty matrix");
  }
  const RealVector s = singular_values(a);
  const double cutoff = tol.rank_tol * s(0);
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) ++rank;
  }
  return rank;
}

ComplexMatrix invert(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "invert");
  if (a.size() == 0) return a;
  const SingularExtremes ext = singular_extremes(a);
  if (!(ext.sigma_min > tol.rank_tol * ext.sigma_max)) {
    throw Error(ErrorCode::Singular,
                "sigma_min = " + std::to_string(ext.sigma_min) +
                    ", sigma_max = " + std::to_string(ext.sigma_max),
                ext.sigma_min);
  }
  return a.partialPivLu().inverse();
}

}  // namespace krein
