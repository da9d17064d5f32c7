#pragma once

// Dense complex linear-algebra kernel. Every threshold used by the rest of
// the library is relative to the largest singular value of the matrix at
// hand and lives in Tolerances.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "krein/error.hpp"

namespace krein {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct Tolerances {
  double rank_tol = 1e-10;
  double sym_tol = 1e-10;
  double recon_tol = 1e-8;

  /// Throws BadFlags unless every field lies in (0, 1).
  void validate() const;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // unitary, column k pairs with eigenvalues[k]
};

struct SingularExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

bool all_finite(const ComplexMatrix& a);

/// Spectral norm; 0 for an empty matrix.
double spectral_norm(const ComplexMatrix& a);

/// ‖A − Aᴴ‖ relative to ‖A‖ (0 for the zero matrix).
double hermitian_deviation(const ComplexMatrix& a);

EigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                 const Tolerances& tol = {});

SingularExtremes singular_extremes(const ComplexMatrix& a);

/// Number of singular values strictly above rank_tol·σ_max.
std::size_t numeric_rank(const ComplexMatrix& a, const Tolerances& tol = {});

ComplexMatrix invert(const ComplexMatrix& a, const Tolerances& tol = {});

}  // namespace krein
