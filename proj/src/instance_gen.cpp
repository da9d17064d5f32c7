#include "krein/instance_gen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace krein {

std::string_view to_string(Defect d) {
  switch (d) {
    case Defect::None: return "none";
    case Defect::DropVector: return "drop_vector";
    case Defect::DuplicateVector: return "duplicate_vector";
    case Defect::NeutralInject: return "neutral_inject";
    case Defect::MixHalves: return "mix_halves";
  }
  return "none";
}

std::optional<Defect> defect_from_string(std::string_view s) {
  for (auto d : {Defect::None, Defect::DropVector, Defect::DuplicateVector,
                 Defect::NeutralInject, Defect::MixHalves}) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

void GenSpec::validate() const {
  auto bad = [](const std::string& msg) {
    throw Error(ErrorCode::BadFlags, msg);
  };
  if (signature) {
    const std::size_t n = signature->first + signature->second;
    if (n < 1 || n > 64) bad("signature p+q must lie in [1, 64]");
  } else {
    if (dim_min < 1 || dim_max > 64 || dim_min > dim_max) {
      bad("dimension range must satisfy 1 <= min <= max <= 64");
    }
  }
  if (!(cond_cap >= 1.0) || !std::isfinite(cond_cap)) {
    bad("cond_cap must be a finite number >= 1");
  }
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(seed + stream * 0x9E3779B97F4A7C15ULL) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t k) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(k));
  return i < k ? i : k - 1;
}

double Rng::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(1.0 - u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::numbers::sqrt2;
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  const auto m = static_cast<Eigen::Index>(n);
  if (m == 0) return ComplexMatrix(0, 0);
  ComplexMatrix z(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) z(i, j) = rng.complex_gaussian();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m, m);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < m; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

KreinMetric gen_metric(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.seed, 1);
  std::size_t n = 0;
  std::size_t p = 0;
  if (spec.signature) {
    p = spec.signature->first;
    n = p + spec.signature->second;
  } else {
    n = spec.dim_min + rng.index(spec.dim_max - spec.dim_min + 1);
    p = rng.index(n + 1);
  }
  RealVector lambda(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = 0.1 + 9.9 * rng.uniform();
    lambda(static_cast<Eigen::Index>(k)) = k < p ? mag : -mag;
  }
  const ComplexMatrix q = random_unitary(n, rng);
  ComplexMatrix g = q * lambda.asDiagonal() * q.adjoint();
  g = 0.5 * (g + g.adjoint()).eval();
  return KreinMetric(std::move(g));
}

namespace {

// Q₁ · diag(σ) · Q₂ with σ_k = cap^(u_k − 1/2), so σ_max/σ_min < cap.
ComplexMatrix random_operator(std::size_t n, double cap, Rng& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix q1 = random_unitary(n, rng);
  const ComplexMatrix q2 = random_unitary(n, rng);
  RealVector sigma(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    sigma(k) = std::pow(cap, rng.uniform() - 0.5);
  }
  return q1 * sigma.asDiagonal() * q2;
}

}  // namespace

OperatorPair gen_operator_pair(const GenSpec& spec,
                               const FundamentalDecomposition& fd) {
  spec.validate();
  Rng rng(spec.seed, 2);
  ComplexMatrix up = random_operator(fd.p, spec.cond_cap, rng);
  ComplexMatrix um = random_operator(fd.q, spec.cond_cap, rng);
  return OperatorPair::make(std::move(up), std::move(um));
}

DefectiveInstance gen_defective_family(const GenSpec& spec, SpacePtr space) {
  const KreinSpace& s = *space;
  const OperatorPair ops = gen_operator_pair(spec, s.fd);
  VectorFamily clean = construct_riesz(ops, space);
  std::vector<KreinVector> vs = clean.vectors;
  const std::size_t n = vs.size();
  const std::size_t p = s.fd.p;
  Rng rng(spec.seed, 3);

  auto impossible = [&](const char* why) {
    throw Error(ErrorCode::DefectImpossible,
                std::string(to_string(spec.defect)) + ": " + why);
  };

  FailureReason expected = FailureReason::None;
  switch (spec.defect) {
    case Defect::None:
      return {std::move(clean), FailureReason::None};
    case Defect::DropVector: {
      if (n <= 1) impossible("needs dimension >= 2");
      const std::size_t k = rng.index(n);
      expected = k < p ? FailureReason::IncompletePlus
                       : FailureReason::IncompleteMinus;
      vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
    case Defect::DuplicateVector: {
      const std::size_t k = rng.index(n);
      expected = k < p ? FailureReason::GramSingularPlus
                       : FailureReason::GramSingularMinus;
      vs.insert(vs.begin() + static_cast<std::ptrdiff_t>(k) + 1, vs[k]);
      break;
    }
    case Defect::NeutralInject: {
      if (s.fd.p == 0 || s.fd.q == 0) impossible("needs p >= 1 and q >= 1");
      vs.emplace_back(s.fd.w.col(0) + s.fd.w.col(static_cast<Eigen::Index>(p)));
      expected = FailureReason::MixedMembership;
      break;
    }
    case Defect::MixHalves: {
      if (s.fd.p == 0 || s.fd.q == 0) impossible("needs p >= 1 and q >= 1");
      // [f', f'] = ‖y‖² − ‖y‖²/4 > 0, so f' stays in I₊ but leaves K⁺.
      const std::size_t k = rng.index(p);
      const double scale = 0.5 * j_norm(vs[k], s);
      vs[k] += scale * s.fd.w.col(static_cast<Eigen::Index>(p));
      expected = FailureReason::MixedMembership;
      break;
    }
  }
  return {split_indices(std::move(vs), std::move(space)), expected};
}

GeneratedInstance generate_instance(const GenSpec& spec) {
  GeneratedInstance inst;
  inst.space = KreinSpace::create(gen_metric(spec));
  if (spec.defect == Defect::None) {
    inst.ops = gen_operator_pair(spec, inst.space->fd);
    inst.family = construct_riesz(*inst.ops, inst.space);
  } else {
    DefectiveInstance d = gen_defective_family(spec, inst.space);
    inst.family = std::move(d.family);
    inst.expected = d.expected;
  }
  return inst;
}

}  // namespace krein
