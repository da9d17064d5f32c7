#pragma once

// Positive and negative Gram matrices of a family and the boundedness /
// invertibility tests built on them.
//
// Orientation: entry (i, j) is [f_i, f_j]. With [x, y] = yᴴ G x this is the
// transpose of Cᴴ C (C = canonical coordinates), which has the same
// spectrum. The negative Gram matrix is stored as computed, so it is
// negative semidefinite for a clean family.

#include <optional>

#include "krein/family.hpp"

namespace krein {

struct GramPair {
  ComplexMatrix g_plus;   // |I₊| × |I₊|
  ComplexMatrix g_minus;  // |I₋| × |I₋|
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  double sigma_min_plus = 0.0;
  double sigma_min_minus = 0.0;
};

struct BesselBounds {
  double b = 0.0;        // I₊ half
  double b_prime = 0.0;  // I₋ half
};

struct GramInvertibility {
  bool plus = true;
  bool minus = true;
  double sigma_min_plus = 0.0;
  double sigma_min_minus = 0.0;
  // σ_min/σ_max; 1 for an empty half.
  double ratio_plus = 1.0;
  double ratio_minus = 1.0;
};

GramPair gram_matrices(const VectorFamily& fam);

/// Optimal Bessel bounds of the two halves: the Gram spectral norms.
BesselBounds bessel_from_gram(const GramPair& gp);

/// Σ_{j,n} |M_{j,n}| for a Hermitian M; also an upper bound for ‖M‖.
double absolute_sum_bound(const ComplexMatrix& m, const Tolerances& tol = {});

/// Σ over all pairs j, n ∈ I of |[f_j, f_n]| (halves mixed, as written).
/// Empty when the sum is not finite.
std::optional<double> absolute_sum_bessel_test(const VectorFamily& fam);

GramInvertibility gram_invertibility(const GramPair& gp,
                                     const Tolerances& tol = {});

}  // namespace krein
