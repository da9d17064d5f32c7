#pragma once

// The Krein space itself: a Hermitian invertible metric G defining
//
//     [x, y] = yᴴ G x      (linear in x, conjugate-linear in y)
//
// together with its fundamental decomposition K = K⁺ ⊕ K⁻.
//
// Two coordinate systems appear throughout the library:
//   * ambient coordinates, the basis in which G is written;
//   * canonical coordinates y = W⁻¹x, in which [x, x'] = y'ᴴ diag(J) y and
//     the J-norm is the Euclidean norm. The first p canonical coordinates
//     describe K⁺, the last q describe K⁻.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "krein/numerics.hpp"

namespace krein {

using KreinVector = ComplexVector;

enum class Half { Plus, Minus };

/// Hermitian, nondegenerate metric matrix. Construction validates.
class KreinMetric {
 public:
  explicit KreinMetric(ComplexMatrix g, Tolerances tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(g_.rows()); }
  const ComplexMatrix& matrix() const { return g_; }
  const Tolerances& tolerances() const { return tol_; }

  /// diag(+1 ×p, −1 ×q).
  static KreinMetric from_signature(std::size_t p, std::size_t q,
                                    Tolerances tol = {});

 private:
  ComplexMatrix g_;
  Tolerances tol_;
};

struct FundamentalDecomposition {
  std::size_t p = 0;
  std::size_t q = 0;
  ComplexMatrix w;          // columns: canonical basis, K⁺ block first
  ComplexMatrix w_inv;      // ambient -> canonical coordinates
  std::vector<int> j;       // +1 ×p then −1 ×q
  RealVector eigenvalues;   // metric eigenvalue behind each column of w
  ComplexMatrix p_plus;     // projector onto K⁺ (ambient)
  ComplexMatrix p_minus;    // projector onto K⁻ (ambient)

  std::size_t dim() const { return p + q; }
  std::size_t half_dim(Half h) const { return h == Half::Plus ? p : q; }

  ComplexVector canonical(const KreinVector& x) const { return w_inv * x; }

  /// Canonical coordinates restricted to one half (length p or q).
  ComplexVector half_coordinates(const KreinVector& x, Half h) const;

  /// Canonical basis of one half, as ambient columns.
  ComplexMatrix half_basis(Half h) const;

  const ComplexMatrix& projector(Half h) const {
    return h == Half::Plus ? p_plus : p_minus;
  }
};

FundamentalDecomposition fundamental_decomposition(const KreinMetric& m);

/// A metric bundled with its (cached) decomposition. Families keep a
/// shared pointer to one of these.
struct KreinSpace {
  KreinMetric metric;
  FundamentalDecomposition fd;

  std::size_t dim() const { return metric.dim(); }
  const Tolerances& tol() const { return metric.tolerances(); }

  static std::shared_ptr<const KreinSpace> create(KreinMetric m);
};

using SpacePtr = std::shared_ptr<const KreinSpace>;

Complex indefinite_inner(const KreinVector& x, const KreinVector& y,
                         const KreinMetric& m);

double j_norm(const KreinVector& x, const KreinSpace& s);

bool is_orthonormal_basis(std::span<const KreinVector> vs,
                          const KreinMetric& m);

/// Equality test: x and y (both in the given half) are equal
/// iff they have the same pairing with every canonical basis vector of
/// that half.
bool equality_via_pairings(const KreinVector& x, const KreinVector& y,
                           Half side, const KreinSpace& s);

/// j_norm of the component of x outside the given half.
double off_half_residual(const KreinVector& x, Half side, const KreinSpace& s);

}  // namespace krein
