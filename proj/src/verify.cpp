#include "krein/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

namespace krein {

namespace {

enum Prop : std::size_t {
  kDecomposition,
  kSplitPartition,
  kOptimalBounds,
  kThreeWayClean,
  kReconstruction,
  kBiorthogonality,
  kBesselTightness,
  kAbsoluteSum,
  kGramOracle,
  kDualOfDual,
  kThreeWayDefective,
  kPlantedReason,
  kPropCount,
};

constexpr std::array<const char*, kPropCount> kPropNames = {
    "decomposition",     "split_partition",     "optimal_bounds",
    "three_way_clean",   "reconstruction",      "biorthogonality",
    "bessel_tightness",  "absolute_sum",        "gram_oracle",
    "dual_of_dual",      "three_way_defective", "planted_reason",
};

constexpr std::array<Defect, 4> kDefects = {
    Defect::DropVector, Defect::DuplicateVector, Defect::NeutralInject,
    Defect::MixHalves};

struct Check {
  std::size_t prop;
  double ratio;
  std::string note;
};

struct TrialLog {
  std::vector<Check> checks;

  void record(std::size_t prop, double ratio, std::string note = {}) {
    checks.push_back({prop, std::isnan(ratio) ? 1e300 : ratio, std::move(note)});
  }
};

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  if (got == want) return 0.0;
  return std::abs(got - want) / scale;
}

bool factorable(const VectorFamily& fam, const Tolerances& tol) {
  try {
    factor_riesz(fam, tol);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void check_clean(const GenSpec& spec, const VerifyOptions& opts, TrialLog& log) {
  const GeneratedInstance inst = generate_instance(spec);
  const KreinSpace& s = *inst.space;
  const OperatorPair& ops = *inst.ops;
  const VectorFamily& fam = inst.family;
  const std::string tag = "seed " + std::to_string(spec.seed);

  {
    const ComplexMatrix w = s.fd.w;
    ComplexMatrix j = ComplexMatrix::Zero(w.cols(), w.cols());
    for (Eigen::Index k = 0; k < j.rows(); ++k) {
      j(k, k) = s.fd.j[static_cast<std::size_t>(k)];
    }
    const double dev = spectral_norm(w.adjoint() * s.metric.matrix() * w - j);
    log.record(kDecomposition, dev / (1e-9 * spectral_norm(s.metric.matrix())), tag);
  }

  log.record(kSplitPartition,
             fam.i_plus.size() == s.fd.p && fam.i_minus.size() == s.fd.q &&
                     !fam.has_neutral
                 ? 0.0
                 : 2.0,
             tag);

  {
    const FrameBounds want = optimal_frame_bounds(ops);
    const FrameBounds got = frame_inequality_bounds(fam);
    const double worst = std::max({rel_err(got.a, want.a), rel_err(got.b, want.b),
                                   rel_err(got.a_prime, want.a_prime),
                                   rel_err(got.b_prime, want.b_prime)});
    log.record(kOptimalBounds, worst / 1e-8, tag);
  }

  {
    const bool a = riesz_via_inequalities(fam, opts.tol).is_riesz;
    const bool b = riesz_via_gram(fam, opts.tol).is_riesz;
    const bool c = factorable(fam, opts.tol);
    log.record(kThreeWayClean, a && b && c ? 0.0 : 2.0, tag);
  }

  const VectorFamily duals = dual_sequence(ops, inst.space);
  log.record(kBiorthogonality, biorthogonality_residual(fam, duals) / 1e-9, tag);

  Rng rng(spec.seed, 6);
  const GramPair gp = gram_matrices(fam);
  for (Half h : {Half::Plus, Half::Minus}) {
    const ComplexMatrix basis = s.fd.half_basis(h);
    if (basis.cols() == 0) continue;

    double worst_recon = 0.0;
    double worst_excess = 0.0;
    const double bound = h == Half::Plus ? gp.norm_plus : gp.norm_minus;
    for (std::size_t t = 0; t < opts.samples; ++t) {
      ComplexVector z(basis.cols());
      for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.complex_gaussian();
      const KreinVector f = basis * z;
      const double fn = j_norm(f, s);
      const KreinVector r = reconstruct(f, fam, duals, h);
      worst_recon = std::max(worst_recon, j_norm(r - f, s) / fn);
      const CoefficientSequence c = analysis(fam, f);
      const double energy =
          (h == Half::Plus ? c.plus : c.minus).squaredNorm() / (fn * fn);
      worst_excess = std::max(worst_excess, energy / (bound * (1.0 + 1e-8)));
    }
    log.record(kReconstruction, worst_recon / opts.tol.recon_tol, tag);

    // The top left singular vector of the coordinate matrix attains B.
    const ComplexMatrix coords = fam.half_canonical(h);
    Eigen::JacobiSVD<ComplexMatrix> svd(coords, Eigen::ComputeThinU);
    const KreinVector top = basis * svd.matrixU().col(0);
    const CoefficientSequence c = analysis(fam, top);
    const double tn = j_norm(top, s);
    const double achieved =
        (h == Half::Plus ? c.plus : c.minus).squaredNorm() / (tn * tn);
    log.record(kBesselTightness,
               std::max(worst_excess, rel_err(achieved, bound) / 1e-8), tag);
  }

  {
    const double abs_sum = absolute_sum_bessel_test(fam).value_or(0.0);
    const double b = std::max(gp.norm_plus, gp.norm_minus);
    log.record(kAbsoluteSum, b / (abs_sum * (1.0 + 1e-10)), tag);
  }

  {
    double worst = 0.0;
    for (Half h : {Half::Plus, Half::Minus}) {
      const ComplexMatrix c = fam.half_canonical(h);
      if (c.cols() == 0) continue;
      const ComplexMatrix oracle = c.adjoint() * c;
      const ComplexMatrix literal =
          h == Half::Plus ? ComplexMatrix(gp.g_plus) : ComplexMatrix(-gp.g_minus);
      // Entry (i, j) of the Gram matrix is [f_i, f_j] = c_jᴴ c_i.
      const double dev = (literal - oracle.transpose()).cwiseAbs().maxCoeff();
      worst = std::max(worst, dev / (1e-10 * spectral_norm(oracle)));
    }
    log.record(kGramOracle, worst, tag);
  }

  {
    double worst = 0.0;
    try {
      const OperatorPair dual_ops = factor_riesz(duals, opts.tol);
      const VectorFamily back = dual_sequence(dual_ops, inst.space);
      for (std::size_t n = 0; n < fam.size(); ++n) {
        const double scale = std::max(1.0, j_norm(fam.vectors[n], s));
        worst = std::max(worst, j_norm(back.vectors[n] - fam.vectors[n], s) /
                                    (1e-8 * scale));
      }
    } catch (const Error&) {
      worst = 2.0;
    }
    log.record(kDualOfDual, worst, tag);
  }
}

void check_defective(const GenSpec& base, std::uint64_t trial,
                     const VerifyOptions& opts, TrialLog& log) {
  GenSpec spec = base;
  spec.defect = kDefects[trial % kDefects.size()];
  Rng rng(spec.seed, 5);
  const std::size_t lo = std::max<std::size_t>(2, opts.dim_min);
  const std::size_t hi = std::max(lo, opts.dim_max);
  const std::size_t n = lo + rng.index(hi - lo + 1);
  const std::size_t p = 1 + rng.index(n - 1);
  spec.signature = std::pair{p, n - p};

  const GeneratedInstance inst = generate_instance(spec);
  const std::string tag = "seed " + std::to_string(spec.seed) + " defect " +
                          std::string(to_string(spec.defect));
  const RieszVerdict a = riesz_via_inequalities(inst.family, opts.tol);
  const RieszVerdict b = riesz_via_gram(inst.family, opts.tol);
  const bool c = factorable(inst.family, opts.tol);
  log.record(kThreeWayDefective, !a.is_riesz && !b.is_riesz && !c ? 0.0 : 2.0, tag);
  const bool planted =
      a.failure_reason == inst.expected && b.failure_reason == inst.expected;
  log.record(kPlantedReason, planted ? 0.0 : 2.0,
             tag + " expected " + std::string(to_string(inst.expected)) +
                 " got " + std::string(to_string(a.failure_reason)) + "/" +
                 std::string(to_string(b.failure_reason)));
}

TrialLog run_trial(std::uint64_t trial, const VerifyOptions& opts) {
  TrialLog log;
  GenSpec spec;
  spec.seed = opts.seed + trial;
  spec.dim_min = opts.dim_min;
  spec.dim_max = opts.dim_max;
  spec.cond_cap = opts.cond_cap;
  try {
    check_clean(spec, opts, log);
  } catch (const std::exception& e) {
    log.record(kThreeWayClean, 2.0,
               "seed " + std::to_string(spec.seed) + ": " + e.what());
  }
  try {
    check_defective(spec, trial, opts, log);
  } catch (const std::exception& e) {
    log.record(kThreeWayDefective, 2.0,
               "seed " + std::to_string(spec.seed) + ": " + e.what());
  }
  return log;
}

}  // namespace

std::uint64_t VerifySummary::violation_count() const {
  std::uint64_t total = 0;
  for (const auto& p : properties) total += p.failed;
  return total;
}

std::string VerifySummary::to_text() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "verify: %llu trials, seed %llu\n",
                static_cast<unsigned long long>(trials),
                static_cast<unsigned long long>(seed));
  out += buf;
  for (const auto& p : properties) {
    std::snprintf(buf, sizeof buf, "  %-20s pass %6llu  fail %4llu  worst margin %.3e\n",
                  p.name.c_str(), static_cast<unsigned long long>(p.passed),
                  static_cast<unsigned long long>(p.failed), p.worst_margin);
    out += buf;
  }
  for (const auto& v : violations) out += "  violation: " + v + "\n";
  std::snprintf(buf, sizeof buf, "violations: %llu\n",
                static_cast<unsigned long long>(violation_count()));
  out += buf;
  return out;
}

std::string VerifySummary::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["seed"] = seed;
  j["violations"] = violation_count();
  j["violation_notes"] = violations;
  for (const auto& p : properties) {
    j["properties"][p.name] = {{"passed", p.passed},
                               {"failed", p.failed},
                               {"worst_margin", p.worst_margin}};
  }
  return j.dump(2) + "\n";
}

VerifySummary run_verification(const VerifyOptions& opts) {
  opts.tol.validate();
  if (opts.dim_min < 1 || opts.dim_max > 64 || opts.dim_min > opts.dim_max) {
    throw Error(ErrorCode::BadFlags, "dimension range must satisfy 1 <= min <= max <= 64");
  }
  std::vector<TrialLog> logs(opts.trials);
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(opts.threads, opts.trials));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t t = next++; t < opts.trials; t = next++) {
      logs[t] = run_trial(t, opts);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  VerifySummary summary;
  summary.trials = opts.trials;
  summary.seed = opts.seed;
  for (const char* name : kPropNames) summary.properties.push_back({name, 0, 0, 0.0});
  for (const auto& log : logs) {
    for (const auto& c : log.checks) {
      PropertyStats& p = summary.properties[c.prop];
      p.worst_margin = std::max(p.worst_margin, c.ratio);
      if (c.ratio <= 1.0) {
        ++p.passed;
      } else {
        ++p.failed;
        if (summary.violations.size() < 20) {
          summary.violations.push_back(std::string(kPropNames[c.prop]) + " (" +
                                       c.note + ")");
        }
      }
    }
  }
  return summary;
}

}  // namespace krein
