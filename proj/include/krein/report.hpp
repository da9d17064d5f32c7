#pragma once

// Analysis and certification reports, plus their JSON encoding. Reports
// hold plain std containers so that a parsed report compares equal to the
// one that was emitted, bit for bit.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "krein/instance_io.hpp"

namespace krein {

using ComplexRows = std::vector<std::vector<std::complex<double>>>;

struct VerdictSummary {
  bool is_riesz = false;
  bool complete_plus = false;
  bool complete_minus = false;
  std::string failure_reason = "none";
  double margin_plus = 0.0;
  double margin_minus = 0.0;
  std::optional<FrameBounds> bounds;

  bool operator==(const VerdictSummary&) const = default;
};

struct GramSummary {
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  double sigma_min_plus = 0.0;
  double sigma_min_minus = 0.0;
  double bessel_b = 0.0;
  double bessel_b_prime = 0.0;
  double absolute_sum = 0.0;

  bool operator==(const GramSummary&) const = default;
};

struct CertificateSummary {
  ComplexRows u_plus;
  ComplexRows u_minus;
  ComplexRows duals;  // one row per family index
  FrameBounds bounds;
  double biorthogonality_residual = 0.0;
  double reconstruction_residual_plus = 0.0;   // max relative, over samples
  double reconstruction_residual_minus = 0.0;
  std::uint64_t samples = 0;

  bool operator==(const CertificateSummary&) const = default;
};

struct Timings {
  double analyze_ms = 0.0;
  double certify_ms = 0.0;

  bool operator==(const Timings&) const = default;
};

struct Report {
  std::size_t dim = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<std::size_t> i_plus;
  std::vector<std::size_t> i_minus;
  std::vector<bool> neutral;
  bool has_neutral = false;
  std::vector<bool> membership;
  Completeness completeness;
  GramSummary gram;
  VerdictSummary via_inequalities;
  VerdictSummary via_gram;
  bool factorable = false;
  std::optional<FrameBounds> bounds;           // frame inequality constants
  std::optional<FrameBounds> operator_bounds;  // from the file's U±, if given
  std::optional<CertificateSummary> certificate;
  std::optional<Timings> timings;

  bool operator==(const Report&) const = default;
};

struct AnalyzeOptions {
  Tolerances tol;
  bool timings = false;
};

struct CertifyOptions {
  Tolerances tol;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100;
  bool timings = false;
};

Report analyze(const InstanceFile& inst, const AnalyzeOptions& opts = {});

/// analyze() plus, when the family is a Riesz basis, the certificate.
/// `report.certificate` is empty for a non-Riesz family.
Report certify_instance(const InstanceFile& inst,
                        const CertifyOptions& opts = {});

std::string report_to_json(const Report& r, int indent = 2);

/// Throws ParseError / SchemaError.
Report report_from_json(std::string_view text);

std::string summarize(const Report& r);

}  // namespace krein
