#pragma once

// Riesz bases of a Krein space: construction from an operator pair, duals
// and reconstruction, optimal frame bounds, and the two equivalent
// characterizations (frame inequalities, Gram invertibility).
//
// All operator matrices act on canonical coordinates of K⁺ (p×p) or K⁻
// (q×q), where [.,.] restricted to each half is ±Euclidean and adjoints are
// conjugate transposes. Families are converted to ambient coordinates only
// at the boundary.

#include <optional>
#include <string_view>

#include "krein/family.hpp"
#include "krein/gram.hpp"

namespace krein {

struct OperatorPair {
  ComplexMatrix u_plus;   // p × p
  ComplexMatrix u_minus;  // q × q
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  double inv_norm_plus = 0.0;   // ‖(U⁺)⁻¹‖
  double inv_norm_minus = 0.0;  // ‖(U⁻)⁻¹‖

  /// Validates bijectivity; throws SingularOperator.
  static OperatorPair make(ComplexMatrix u_plus, ComplexMatrix u_minus,
                           const Tolerances& tol = {});

  const ComplexMatrix& op(Half h) const {
    return h == Half::Plus ? u_plus : u_minus;
  }
};

/// Frame / Riesz constants. An empty half reports zeros.
struct FrameBounds {
  double a = 0.0;
  double b = 0.0;
  double a_prime = 0.0;
  double b_prime = 0.0;

  bool operator==(const FrameBounds&) const = default;
};

enum class FailureReason {
  None,
  IncompletePlus,
  IncompleteMinus,
  GramSingularPlus,
  GramSingularMinus,
  MixedMembership,
};

std::string_view to_string(FailureReason r);
std::optional<FailureReason> failure_reason_from_string(std::string_view s);

struct RieszVerdict {
  bool is_riesz = false;
  bool complete_plus = false;
  bool complete_minus = false;
  std::optional<FrameBounds> bounds_witness;
  FailureReason failure_reason = FailureReason::None;
  // Lower/upper ratio per half (A/B or σ_min/σ_max); 1 on an empty half.
  double margin_plus = 0.0;
  double margin_minus = 0.0;
};

struct RieszCertificate {
  OperatorPair ops;
  VectorFamily family;
  VectorFamily duals;
  FrameBounds bounds;
};

struct SpanOperator {
  ComplexMatrix op;   // canonical coordinates of the chosen half
  double norm = 0.0;
  double norm_bound = 0.0;  // √(B/A)
};

VectorFamily construct_riesz(const OperatorPair& ops, SpacePtr space);

VectorFamily dual_sequence(const OperatorPair& ops, SpacePtr space);

/// max |[f_n, g_m] − ε_n δ_nm| with ε = +1 on I₊, −1 on I₋ (and 0 across
/// halves). Throws SplitMismatch.
double biorthogonality_residual(const VectorFamily& fam,
                                const VectorFamily& duals);

bool biorthogonality_check(const VectorFamily& fam, const VectorFamily& duals);

/// f = Σ_{n ∈ side} ε_n [f, g_n] f_n with ε_n = [e_n, e_n] = ±1.
KreinVector reconstruct(const KreinVector& f, const VectorFamily& fam,
                        const VectorFamily& duals, Half side);

FrameBounds optimal_frame_bounds(const OperatorPair& ops);

/// Extreme eigenvalues of the synthesis Gram forms, computed from the
/// singular values of the canonical coordinate matrices. Throws
/// MixedMembership.
FrameBounds frame_inequality_bounds(const VectorFamily& fam);

RieszVerdict riesz_via_inequalities(const VectorFamily& fam,
                                    const Tolerances& tol);

RieszVerdict riesz_via_gram(const VectorFamily& fam, const Tolerances& tol);

/// Reads U± off the canonical coordinates of the family. Throws NotRiesz
/// or CountMismatch.
OperatorPair factor_riesz(const VectorFamily& fam, const Tolerances& tol);

/// Factor, build duals and bounds. Throws like factor_riesz.
RieszCertificate certify(const VectorFamily& fam, const Tolerances& tol);

/// Linear map sending h_n to g_n on one half. Throws LowerBoundZero,
/// CountMismatch or MixedMembership.
SpanOperator span_operator(const VectorFamily& h_fam,
                           const VectorFamily& g_fam, Half side,
                           const Tolerances& tol);

}  // namespace krein
