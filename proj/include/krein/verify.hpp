#pragma once

// Batch verification: generates instances and runs every cross-criterion
// check on them. Backs `krein verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "krein/instance_gen.hpp"

namespace krein {

struct VerifyOptions {
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::size_t dim_min = 1;
  std::size_t dim_max = 12;
  double cond_cap = 1e4;
  std::size_t threads = 1;
  std::size_t samples = 20;  // random vectors per half and property
  Tolerances tol;
};

struct PropertyStats {
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  // Largest measured/threshold ratio seen; > 1 means a violation.
  double worst_margin = 0.0;
};

struct VerifySummary {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyStats> properties;
  std::vector<std::string> violations;  // first few, for diagnostics

  std::uint64_t violation_count() const;
  /// Deterministic text (no timings).
  std::string to_text() const;
  std::string to_json() const;
};

/// Each trial t uses seed + t for one clean instance and one defective
/// instance (defects cycle through all four kinds).
VerifySummary run_verification(const VerifyOptions& opts);

}  // namespace krein
