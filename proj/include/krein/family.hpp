#pragma once

#include <cstddef>
#include <vector>

#include "krein/krein_core.hpp"

namespace krein {

/// Finite indexed family {f_n} with its sign-based index split
///   I₊ = {n : [f_n, f_n] ≥ 0},  I₋ = {n : [f_n, f_n] < 0}.
/// Both index lists preserve the original family order.
struct VectorFamily {
  SpacePtr space;
  std::vector<KreinVector> vectors;
  std::vector<std::size_t> i_plus;
  std::vector<std::size_t> i_minus;
  std::vector<bool> neutral;  // per index: [f_n, f_n] numerically zero
  bool has_neutral = false;

  std::size_t size() const { return vectors.size(); }
  const std::vector<std::size_t>& indices(Half h) const {
    return h == Half::Plus ? i_plus : i_minus;
  }
  /// Columns = ambient coordinates of the given half's vectors.
  ComplexMatrix half_matrix(Half h) const;
  /// Columns = canonical coordinates of the given half's vectors inside
  /// that half (p or q rows).
  ComplexMatrix half_canonical(Half h) const;
};

struct CoefficientSequence {
  ComplexVector plus;   // indexed like i_plus
  ComplexVector minus;  // indexed like i_minus
};

struct SynthesisResult {
  KreinVector f_plus;
  KreinVector f_minus;
};

struct Completeness {
  bool plus = false;
  bool minus = false;
  bool total = false;

  bool operator==(const Completeness&) const = default;
};

VectorFamily split_indices(std::vector<KreinVector> vectors, SpacePtr space);

/// Per index: true iff f_n lies in the half its index class claims.
std::vector<bool> subspace_membership(const VectorFamily& fam);

bool membership_clean(const VectorFamily& fam);

SynthesisResult synthesis(const VectorFamily& fam,
                          const CoefficientSequence& c);

CoefficientSequence analysis(const VectorFamily& fam, const KreinVector& f);

Completeness completeness(const VectorFamily& fam);

}  // namespace krein
