#pragma once

// Deterministic random instances for testing and the verification suite.
//
// Random source: std::mt19937_64 (bit-exact by the C++ standard). Each
// generator operation draws from its own stream, seeded with
//     seed + stream · 0x9E3779B97F4A7C15  (mod 2⁶⁴)
// with streams 1 (metric), 2 (operator pair), 3 (defect).
// Variates:
//     uniform   u = (x >> 11) · 2⁻⁵³                       in [0, 1)
//     index     ⌊u · k⌋                                     in [0, k)
//     gaussian  √(−2 ln(1 − u₁)) · cos(2π u₂)               (Box–Muller)
//     complex   (g₁ + i g₂) / √2

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>

#include "krein/riesz.hpp"

namespace krein {

enum class Defect { None, DropVector, DuplicateVector, NeutralInject, MixHalves };

std::string_view to_string(Defect d);
std::optional<Defect> defect_from_string(std::string_view s);

struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t dim_min = 1;
  std::size_t dim_max = 12;
  std::optional<std::pair<std::size_t, std::size_t>> signature;  // fixed (p, q)
  double cond_cap = 1e4;
  Defect defect = Defect::None;

  /// Throws BadFlags.
  void validate() const;
};

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform();
  std::size_t index(std::size_t k);
  double gaussian();
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
};

/// Haar-like random unitary from the QR factorization of a complex
/// Gaussian matrix, with R's diagonal phases moved into Q.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

KreinMetric gen_metric(const GenSpec& spec);

OperatorPair gen_operator_pair(const GenSpec& spec,
                               const FundamentalDecomposition& fd);

struct DefectiveInstance {
  VectorFamily family;
  FailureReason expected = FailureReason::None;
};

/// A Riesz family from gen_operator_pair with spec.defect applied.
/// Throws DefectImpossible.
DefectiveInstance gen_defective_family(const GenSpec& spec, SpacePtr space);

struct GeneratedInstance {
  SpacePtr space;
  std::optional<OperatorPair> ops;  // present when defect == None
  VectorFamily family;
  FailureReason expected = FailureReason::None;
};

GeneratedInstance generate_instance(const GenSpec& spec);

}  // namespace krein
