#include <doctest.h>

#include <functional>
#include <random>

#include "helpers.hpp"
#include "krein/instance_gen.hpp"
#include "oracles.hpp"

using namespace krein;
using testutil::mat;
using testutil::vec;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadFlags;
}

GeneratedInstance instance(std::uint64_t seed, Defect d = Defect::None, std::size_t dmax = 12) {
  GenSpec spec;
  spec.seed = seed;
  spec.dim_max = dmax;
  spec.defect = d;
  if (d != Defect::None) spec.dim_min = 2;
  return generate_instance(spec);
}

}  // namespace

TEST_CASE("OperatorPair::make") {
  const auto ops = OperatorPair::make(mat({{2, 0}, {0, 1}}), mat({{3}}));
  CHECK(ops.norm_plus == doctest::Approx(2));
  CHECK(ops.inv_norm_plus == doctest::Approx(1));
  CHECK(ops.inv_norm_minus == doctest::Approx(1.0 / 3));
  CHECK(code_of([] { OperatorPair::make(mat({{1, 1}, {1, 1}}), mat({{1}})); }) == ErrorCode::SingularOperator);
  CHECK(code_of([] { OperatorPair::make(ComplexMatrix::Zero(1, 2), mat({{1}})); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("construct_riesz examples") {
  auto s = testutil::signature_space(1, 1);
  auto fam = construct_riesz(OperatorPair::make(mat({{1}}), mat({{1}})), s);
  CHECK(fam.vectors[0] == vec({1, 0}));
  CHECK(fam.vectors[1] == vec({0, 1}));

  fam = construct_riesz(OperatorPair::make(mat({{2}}), mat({{1}})), s);
  CHECK(fam.vectors[0] == vec({2, 0}));
  CHECK(fam.vectors[1] == vec({0, 1}));
  CHECK(fam.i_plus == std::vector<std::size_t>{0});
  CHECK(fam.i_minus == std::vector<std::size_t>{1});

  auto s2 = testutil::signature_space(2, 0);
  fam = construct_riesz(OperatorPair::make(mat({{1, 1}, {0, 1}}), ComplexMatrix(0, 0)), s2);
  CHECK(fam.vectors[0] == vec({1, 0}));
  CHECK(fam.vectors[1] == vec({1, 1}));

  CHECK(code_of([&] { construct_riesz(OperatorPair::make(mat({{1}}), mat({{1}})), s2); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("dual_sequence examples") {
  auto s = testutil::signature_space(1, 1);
  auto d = dual_sequence(OperatorPair::make(mat({{1}}), mat({{1}})), s);
  CHECK(d.vectors[0] == vec({1, 0}));
  CHECK(d.vectors[1] == vec({0, 1}));

  d = dual_sequence(OperatorPair::make(mat({{2}}), mat({{1}})), s);
  CHECK(d.vectors[0] == vec({0.5, 0}));

  auto s2 = testutil::signature_space(2, 0);
  d = dual_sequence(OperatorPair::make(mat({{1, 1}, {0, 1}}), ComplexMatrix(0, 0)), s2);
  CHECK(testutil::max_abs(d.vectors[0] - vec({1, -1})) <= 1e-15);
  CHECK(testutil::max_abs(d.vectors[1] - vec({0, 1})) <= 1e-15);
}

TEST_CASE("biorthogonality examples") {
  auto s = testutil::signature_space(1, 1);
  const auto onb = split_indices({vec({1, 0}), vec({0, 1})}, s);
  CHECK(biorthogonality_check(onb, onb));
  CHECK(biorthogonality_residual(onb, onb) == 0.0);

  const auto f = split_indices({vec({2, 0})}, s);
  const auto g = split_indices({vec({1, 0})}, s);
  CHECK_FALSE(biorthogonality_check(f, g));
  CHECK(biorthogonality_residual(f, g) == doctest::Approx(1));

  CHECK(code_of([&] { biorthogonality_check(onb, g); }) == ErrorCode::SplitMismatch);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(seed);
    CHECK(biorthogonality_check(construct_riesz(*inst.ops, inst.space), dual_sequence(*inst.ops, inst.space)));
  }
}

TEST_CASE("reconstruct examples") {
  auto s = testutil::signature_space(1, 1);
  const auto ops = OperatorPair::make(mat({{2}}), mat({{1}}));
  const auto fam = construct_riesz(ops, s);
  const auto duals = dual_sequence(ops, s);
  CHECK(reconstruct(vec({0, 0}), fam, duals, Half::Plus).isZero());
  CHECK(testutil::max_abs(reconstruct(vec({3, 0}), fam, duals, Half::Plus) - vec({3, 0})) <= 1e-15);
  CHECK(testutil::max_abs(reconstruct(vec({0, Complex(1, 2)}), fam, duals, Half::Minus) - vec({0, Complex(1, 2)})) <= 1e-15);
  CHECK(code_of([&] { reconstruct(vec({1, 1}), fam, duals, Half::Plus); }) == ErrorCode::NotInSubspace);
}

TEST_CASE("reconstruction on random instances") {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = instance(seed);
    const auto cert = certify(inst.family, inst.space->tol());
    const auto& s = *inst.space;
    for (Half h : {Half::Plus, Half::Minus}) {
      const std::size_t d = s.fd.half_dim(h);
      if (d == 0) continue;
      for (int t = 0; t < 20; ++t) {
        const KreinVector f = s.fd.half_basis(h) * oracle::random_matrix(d, 1, rng).col(0);
        const KreinVector r = reconstruct(f, cert.family, cert.duals, h);
        CHECK(j_norm(r - f, s) <= 1e-8 * j_norm(f, s));
      }
    }
  }
}

TEST_CASE("optimal_frame_bounds examples") {
  auto b = optimal_frame_bounds(OperatorPair::make(mat({{2, 0}, {0, 1}}), mat({{1}})));
  CHECK(b.a == doctest::Approx(1));
  CHECK(b.b == doctest::Approx(4));
  b = optimal_frame_bounds(OperatorPair::make(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)));
  CHECK(b == FrameBounds{1, 1, 1, 1});

  const ComplexMatrix u = mat({{1, 2}, {Complex(0, 1), -1}});
  const Complex c(0.5, 1.5);
  const auto b1 = optimal_frame_bounds(OperatorPair::make(u, mat({{1}})));
  const auto b2 = optimal_frame_bounds(OperatorPair::make(c * u, mat({{1}})));
  CHECK(b2.a == doctest::Approx(std::norm(c) * b1.a));
  CHECK(b2.b == doctest::Approx(std::norm(c) * b1.b));
}

TEST_CASE("frame_inequality_bounds examples") {
  auto s = testutil::signature_space(1, 1);
  CHECK(frame_inequality_bounds(split_indices({vec({1, 0}), vec({0, 1})}, s)) == FrameBounds{1, 1, 1, 1});
  const auto dup = frame_inequality_bounds(split_indices({vec({1, 0}), vec({1, 0}), vec({0, 1})}, s));
  CHECK(dup.a == 0.0);
  CHECK(dup.b == doctest::Approx(2));
  CHECK(code_of([&] { frame_inequality_bounds(split_indices({vec({1, 1})}, s)); }) == ErrorCode::MixedMembership);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = instance(seed);
    const auto got = frame_inequality_bounds(construct_riesz(*inst.ops, inst.space));
    const auto want = optimal_frame_bounds(*inst.ops);
    CHECK(oracle::rel(got.a, want.a) <= 1e-9);
    CHECK(oracle::rel(got.b, want.b) <= 1e-9);
    CHECK(oracle::rel(got.a_prime, want.a_prime) <= 1e-9);
    CHECK(oracle::rel(got.b_prime, want.b_prime) <= 1e-9);
  }
}

TEST_CASE("frame inequalities hold and extremal vectors attain them") {
  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(seed, Defect::None, 8);
    const auto& s = *inst.space;
    const auto bounds = optimal_frame_bounds(*inst.ops);
    for (Half h : {Half::Plus, Half::Minus}) {
      const std::size_t d = s.fd.half_dim(h);
      if (d == 0) continue;
      const double lo = h == Half::Plus ? bounds.a : bounds.a_prime;
      const double hi = h == Half::Plus ? bounds.b : bounds.b_prime;
      auto ratio = [&](const ComplexVector& c) {
        const auto r = h == Half::Plus ? synthesis(inst.family, {c, ComplexVector::Zero(static_cast<Eigen::Index>(s.fd.q))})
                                       : synthesis(inst.family, {ComplexVector::Zero(static_cast<Eigen::Index>(s.fd.p)), c});
        const KreinVector& f = h == Half::Plus ? r.f_plus : r.f_minus;
        return std::pow(j_norm(f, s), 2) / c.squaredNorm();
      };
      for (int t = 0; t < 50; ++t) {
        const double q = ratio(oracle::random_matrix(d, 1, rng).col(0));
        CHECK(q >= lo * (1 - 1e-9));
        CHECK(q <= hi * (1 + 1e-9));
      }
      Eigen::JacobiSVD<ComplexMatrix> svd(inst.ops->op(h), Eigen::ComputeFullV);
      CHECK(oracle::rel(ratio(svd.matrixV().col(0)), hi) <= 1e-8);
      CHECK(oracle::rel(ratio(svd.matrixV().col(static_cast<Eigen::Index>(d) - 1)), lo) <= 1e-8);
    }
  }
}

TEST_CASE("Gram Bessel bounds equal squared operator norms") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = instance(seed);
    const auto b = bessel_from_gram(gram_matrices(inst.family));
    if (inst.space->fd.p) CHECK(oracle::rel(b.b, std::pow(inst.ops->norm_plus, 2)) <= 1e-9);
    if (inst.space->fd.q) CHECK(oracle::rel(b.b_prime, std::pow(inst.ops->norm_minus, 2)) <= 1e-9);
  }
}

TEST_CASE("verdict examples") {
  auto s = testutil::signature_space(1, 1);
  const auto tol = s->tol();
  const auto onb = split_indices({vec({1, 0}), vec({0, 1})}, s);
  CHECK(riesz_via_gram(onb, tol).is_riesz);
  CHECK(riesz_via_inequalities(onb, tol).is_riesz);
  CHECK(riesz_via_gram(onb, tol).failure_reason == FailureReason::None);

  const auto dup = split_indices({vec({1, 0}), vec({1, 0}), vec({0, 1})}, s);
  CHECK(riesz_via_gram(dup, tol).failure_reason == FailureReason::GramSingularPlus);
  CHECK(riesz_via_inequalities(dup, tol).failure_reason == FailureReason::GramSingularPlus);
  CHECK_FALSE(riesz_via_inequalities(dup, tol).is_riesz);

  const auto missing = split_indices({vec({1, 0})}, s);
  CHECK(riesz_via_gram(missing, tol).failure_reason == FailureReason::IncompleteMinus);
  CHECK(riesz_via_inequalities(missing, tol).failure_reason == FailureReason::IncompleteMinus);

  const auto mixed = split_indices({vec({1, 0}), vec({1, 1}), vec({0, 1})}, s);
  CHECK(riesz_via_gram(mixed, tol).failure_reason == FailureReason::MixedMembership);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(seed);
    CHECK(riesz_via_inequalities(inst.family, tol).is_riesz);
    CHECK(riesz_via_gram(inst.family, tol).is_riesz);
  }
}

TEST_CASE("failure reason strings round-trip") {
  for (auto r : {FailureReason::None, FailureReason::IncompletePlus, FailureReason::IncompleteMinus,
                 FailureReason::GramSingularPlus, FailureReason::GramSingularMinus,
                 FailureReason::MixedMembership}) {
    CHECK(failure_reason_from_string(to_string(r)) == r);
  }
  CHECK_FALSE(failure_reason_from_string("bogus").has_value());
}

TEST_CASE("factor_riesz examples") {
  auto s = testutil::signature_space(1, 1);
  const auto tol = s->tol();
  auto ops = factor_riesz(split_indices({vec({1, 0}), vec({0, 1})}, s), tol);
  CHECK(ops.u_plus == mat({{1}}));
  CHECK(ops.u_minus == mat({{1}}));
  ops = factor_riesz(split_indices({vec({2, 0}), vec({0, 3})}, s), tol);
  CHECK(ops.u_plus == mat({{2}}));
  CHECK(ops.u_minus == mat({{3}}));

  CHECK(code_of([&] { factor_riesz(split_indices({vec({1, 0}), vec({1, 0}), vec({0, 1})}, s), tol); }) ==
        ErrorCode::CountMismatch);
  CHECK(code_of([&] { factor_riesz(split_indices({vec({1, 0}), vec({1, 1}), vec({0, 1})}, s), tol); }) ==
        ErrorCode::NotRiesz);
  const auto s3 = testutil::signature_space(2, 1);
  CHECK(code_of([&] { factor_riesz(split_indices({vec({1, 0, 0}), vec({2, 0, 0}), vec({0, 0, 1})}, s3), tol); }) ==
        ErrorCode::NotRiesz);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(seed);
    const auto back = factor_riesz(inst.family, tol);
    const auto again = construct_riesz(back, inst.space);
    for (std::size_t k = 0; k < again.size(); ++k) {
      CHECK(j_norm(again.vectors[k] - inst.family.vectors[k], *inst.space) <=
            1e-10 * j_norm(inst.family.vectors[k], *inst.space));
    }
    CHECK(spectral_norm(back.u_plus - inst.ops->u_plus) <= 1e-10 * std::max(1.0, inst.ops->norm_plus));
    const auto fb = frame_inequality_bounds(inst.family);
    const auto ob = optimal_frame_bounds(back);
    CHECK(oracle::rel(fb.a, ob.a) <= 1e-9);
    CHECK(oracle::rel(fb.b_prime, ob.b_prime) <= 1e-9);
  }
}

TEST_CASE("three characterizations agree on clean and defective instances") {
  const Defect defects[] = {Defect::None, Defect::DropVector, Defect::DuplicateVector,
                            Defect::NeutralInject, Defect::MixHalves};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Defect d = defects[seed % 5];
    GenSpec spec;
    spec.seed = seed;
    spec.defect = d;
    spec.signature = std::pair<std::size_t, std::size_t>{1 + seed % 3, 1 + seed % 4};
    const auto inst = generate_instance(spec);
    const auto tol = inst.space->tol();
    const auto vi = riesz_via_inequalities(inst.family, tol);
    const auto vg = riesz_via_gram(inst.family, tol);
    bool factored = true;
    try {
      factor_riesz(inst.family, tol);
    } catch (const Error&) {
      factored = false;
    }
    CHECK(vi.is_riesz == vg.is_riesz);
    CHECK(vg.is_riesz == factored);
    CHECK(vg.is_riesz == (d == Defect::None));
    CHECK(vg.failure_reason == inst.expected);
    CHECK(vi.failure_reason == inst.expected);
  }
}

TEST_CASE("duals are unique") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = instance(seed, Defect::None, 8);
    const auto cert = certify(inst.family, inst.space->tol());
    const auto& s = *inst.space;
    CHECK(biorthogonality_residual(cert.family, cert.duals) <= 1e-9);
    // Any perturbation of a single dual breaks biorthogonality in proportion.
    for (std::size_t k = 0; k < cert.duals.size(); ++k) {
      auto vs = cert.duals.vectors;
      const KreinVector delta = 1e-4 * oracle::random_matrix(s.dim(), 1, rng).col(0);
      vs[k] += delta;
      const auto perturbed = split_indices(vs, inst.space);
      if (perturbed.i_plus != cert.duals.i_plus) continue;
      // Pairings with f_n read off Uᴴ times the perturbation's canonical coordinates.
      const double smin = std::sqrt(std::min(cert.bounds.a > 0 ? cert.bounds.a : 1e300,
                                             cert.bounds.a_prime > 0 ? cert.bounds.a_prime : 1e300));
      const double floor = smin * j_norm(delta, s) / std::sqrt(2.0 * static_cast<double>(s.dim()));
      CHECK(biorthogonality_residual(cert.family, perturbed) >= 0.99 * floor);
    }
  }
}

TEST_CASE("dual of the dual is the original family") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = instance(seed);
    const auto tol = inst.space->tol();
    const auto cert = certify(inst.family, tol);
    const auto again = dual_sequence(factor_riesz(cert.duals, tol), inst.space);
    for (std::size_t k = 0; k < again.size(); ++k) {
      CHECK(j_norm(again.vectors[k] - inst.family.vectors[k], *inst.space) <=
            1e-8 * j_norm(inst.family.vectors[k], *inst.space));
    }
  }
}

TEST_CASE("span_operator examples") {
  auto s = testutil::signature_space(2, 1);
  const auto tol = s->tol();
  const auto onb = split_indices({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}, s);
  auto so = span_operator(onb, onb, Half::Plus, tol);
  CHECK(testutil::max_abs(so.op - ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(so.norm_bound == doctest::Approx(1));

  const auto twice = split_indices({vec({2, 0, 0}), vec({0, 2, 0}), vec({0, 0, 1})}, s);
  so = span_operator(onb, twice, Half::Plus, tol);
  CHECK(testutil::max_abs(so.op - 2.0 * ComplexMatrix::Identity(2, 2)) <= 1e-15);
  CHECK(so.norm_bound == doctest::Approx(2));

  const auto dup = split_indices({vec({1, 0, 0}), vec({1, 0, 0}), vec({0, 0, 1})}, s);
  CHECK(code_of([&] { span_operator(dup, onb, Half::Plus, tol); }) == ErrorCode::LowerBoundZero);
  const auto short_fam = split_indices({vec({1, 0, 0}), vec({0, 0, 1})}, s);
  CHECK(code_of([&] { span_operator(onb, short_fam, Half::Plus, tol); }) == ErrorCode::CountMismatch);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(seed);
    const auto cert = certify(inst.family, inst.space->tol());
    for (Half h : {Half::Plus, Half::Minus}) {
      if (inst.space->fd.half_dim(h) == 0) continue;
      const ComplexMatrix& u = inst.ops->op(h);
      const auto sp = span_operator(cert.family, cert.duals, h, inst.space->tol());
      const ComplexMatrix want = invert(u * u.adjoint());
      CHECK(spectral_norm(sp.op - want) <= 1e-8 * spectral_norm(want));
      CHECK(sp.norm <= sp.norm_bound * (1 + 1e-8));
    }
  }
}
