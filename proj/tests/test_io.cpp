#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>

#include "helpers.hpp"
#include "krein/report.hpp"

using namespace krein;

namespace {

Error error_of(std::string_view text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error");
  return Error(ErrorCode::BadFlags, "");
}

constexpr const char* kOnb = R"({"version":"krein/1","metric":{"signature":[1,1]},
  "family":[[[1,0],[0,0]],[[0,0],[1,0]]]})";

}  // namespace

TEST_CASE("parse_instance accepts both metric forms") {
  auto inst = parse_instance(kOnb);
  REQUIRE(inst.signature.has_value());
  CHECK(inst.signature->first == 1);
  CHECK(inst.family.size() == 2);
  CHECK(inst.metric().dim() == 2);

  inst = parse_instance(R"({"version":"krein/1","metric":{"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]},
    "family":[[[1,0.5],[2,-1]]],"operators":{"u_plus":[[[1,0]]],"u_minus":[[[2,0]]]}})");
  REQUIRE(inst.matrix.has_value());
  CHECK((*inst.matrix)(0, 1) == Complex(1, 0));
  CHECK(inst.family[0](0) == Complex(1, 0.5));
  CHECK((*inst.u_minus)(0, 0) == Complex(2, 0));
}

TEST_CASE("parse errors carry a location") {
  auto e = error_of(R"({"version": "krein/1", )");
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(std::string(e.what()).find("byte") != std::string::npos);

  e = error_of(R"({"version":"krein/2","metric":{"signature":[1,1]},"family":[]})");
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(std::string(e.what()).find("$.version") != std::string::npos);

  e = error_of(R"({"version":"krein/1","metric":{"signature":[1,1]},"family":[[[1,0]]]})");
  CHECK(e.code() == ErrorCode::SchemaError);
  CHECK(std::string(e.what()).find("$.family[0]") != std::string::npos);

  e = error_of(R"({"version":"krein/1","metric":{"signature":[1,1]},"family":[[[1,0],"x"]]})");
  CHECK(std::string(e.what()).find("$.family[0][1]") != std::string::npos);

  e = error_of(R"({"version":"krein/1","metric":{},"family":[]})");
  CHECK(std::string(e.what()).find("$.metric") != std::string::npos);

  e = error_of(R"({"version":"krein/1","family":[]})");
  CHECK(e.code() == ErrorCode::SchemaError);

  e = error_of(R"({"version":"krein/1","metric":{"signature":[1,1]},"family":[],
                   "operators":{"u_plus":[[[1,0]]],"u_minus":[[[1,0],[0,0]]]}})");
  CHECK(std::string(e.what()).find("$.operators") != std::string::npos);
}

TEST_CASE("emit and parse round-trip generated instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.defect = static_cast<Defect>(seed % 5);
    spec.signature = std::pair<std::size_t, std::size_t>{1 + seed % 3, 1 + seed % 2};
    const auto file = instance_from_generated(generate_instance(spec), spec);
    const std::string text = emit_instance(file);
    const auto back = parse_instance(text);
    CHECK(emit_instance(back) == text);
    REQUIRE(back.family.size() == file.family.size());
    for (std::size_t k = 0; k < back.family.size(); ++k) CHECK(back.family[k] == file.family[k]);
    CHECK(back.matrix == file.matrix);
  }
}

TEST_CASE("analyze examples") {
  auto r = analyze(parse_instance(kOnb));
  CHECK(r.via_gram.is_riesz);
  CHECK(r.via_inequalities.is_riesz);
  REQUIRE(r.bounds.has_value());
  CHECK(*r.bounds == FrameBounds{1, 1, 1, 1});

  r = analyze(parse_instance(R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]],[[1,0],[0,0]],[[0,0],[1,0]]]})"));
  CHECK_FALSE(r.via_gram.is_riesz);
  CHECK(r.via_gram.failure_reason == "gram_singular_plus");
}

TEST_CASE("certify examples") {
  auto r = certify_instance(parse_instance(kOnb));
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->biorthogonality_residual <= 1e-12);
  CHECK(r.certificate->reconstruction_residual_plus <= 1e-12);
  CHECK(r.certificate->reconstruction_residual_minus <= 1e-12);
  CHECK(r.certificate->duals[0][0] == Complex(1));

  r = certify_instance(parse_instance(R"({"version":"krein/1","metric":{"signature":[1,0]},
    "family":[[[2,0]]]})"));
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->duals[0][0] == Complex(0.5));

  r = certify_instance(parse_instance(R"({"version":"krein/1","metric":{"signature":[1,1]},
    "family":[[[1,0],[0,0]]]})"));
  CHECK_FALSE(r.certificate.has_value());
}

TEST_CASE("report JSON round-trips float-exactly") {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.defect = static_cast<Defect>(seed % 5);
    spec.signature = std::pair<std::size_t, std::size_t>{1 + seed % 3, 1 + seed % 2};
    const auto file = instance_from_generated(generate_instance(spec), spec);
    CertifyOptions opts;
    opts.samples = 5;
    opts.timings = seed % 2 == 0;
    const Report r = certify_instance(file, opts);
    const std::string text = report_to_json(r);
    const Report back = report_from_json(text);
    CHECK(back == r);
    CHECK(report_to_json(back) == text);
  }

  // Awkward doubles survive.
  Report r;
  r.gram.norm_plus = 0.1 + 0.2;
  r.gram.sigma_min_plus = std::numeric_limits<double>::denorm_min();
  r.gram.absolute_sum = 1.0 / 3.0;
  r.bounds = FrameBounds{std::nextafter(1.0, 2.0), 1e308, 5e-324, 123456789.123456789};
  const Report back = report_from_json(report_to_json(r));
  CHECK(back == r);
  CHECK(std::memcmp(&back.gram.norm_plus, &r.gram.norm_plus, sizeof(double)) == 0);
}

TEST_CASE("analyze depends only on the input") {
  GenSpec spec;
  spec.seed = 9;
  const std::string text = emit_instance(instance_from_generated(generate_instance(spec), spec));
  const std::string a = report_to_json(analyze(parse_instance(text)));
  const std::string b = report_to_json(analyze(parse_instance(text)));
  CHECK(a == b);
}

TEST_CASE("summary shows the verdict") {
  const auto s = summarize(analyze(parse_instance(kOnb)));
  CHECK(s.find("riesz=yes") != std::string::npos);
}
