#pragma once

// Instance files, format "krein/1" (JSON):
//
//   {
//     "version": "krein/1",
//     "metric": {"signature": [p, q]}            // G = diag(+1…, −1…)
//            | {"matrix": [[[re, im], …], …]},   // dense Hermitian, row-major
//     "family": [[[re, im], …], …],               // one entry per vector
//     "operators": {"u_plus": …, "u_minus": …},   // optional, canonical coords
//     "meta": {…}                                 // optional, free-form
//   }
//
// Complex numbers are always two-element [re, im] arrays.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "krein/instance_gen.hpp"

namespace krein {

inline constexpr std::string_view kFormatVersion = "krein/1";

struct InstanceFile {
  std::optional<std::pair<std::size_t, std::size_t>> signature;
  std::optional<ComplexMatrix> matrix;
  std::vector<KreinVector> family;
  std::optional<ComplexMatrix> u_plus;
  std::optional<ComplexMatrix> u_minus;
  std::string meta_json;  // serialized "meta" object, empty if absent

  KreinMetric metric(const Tolerances& tol = {}) const;
};

/// Throws ParseError (malformed JSON, with byte offset) or SchemaError.
InstanceFile parse_instance(std::string_view text);

InstanceFile read_instance_file(const std::string& path);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string emit_instance(const InstanceFile& inst);

InstanceFile instance_from_generated(const GeneratedInstance& gen,
                                     const GenSpec& spec);

}  // namespace krein
