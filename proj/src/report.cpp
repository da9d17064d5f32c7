#include "krein/report.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "json_codec.hpp"

namespace krein {

using detail::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ComplexRows to_rows(const ComplexMatrix& m) {
  ComplexRows rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rows[static_cast<std::size_t>(i)].push_back(m(i, j));
    }
  }
  return rows;
}

VerdictSummary summarize_verdict(const RieszVerdict& v) {
  return {v.is_riesz,
          v.complete_plus,
          v.complete_minus,
          std::string(to_string(v.failure_reason)),
          v.margin_plus,
          v.margin_minus,
          v.bounds_witness};
}

double max_relative_reconstruction(const RieszCertificate& cert, Half side,
                                   std::uint64_t samples, Rng& rng) {
  const KreinSpace& s = *cert.family.space;
  const ComplexMatrix basis = s.fd.half_basis(side);
  double worst = 0.0;
  if (basis.cols() == 0) return worst;
  for (std::uint64_t t = 0; t < samples; ++t) {
    ComplexVector z(basis.cols());
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.complex_gaussian();
    const KreinVector f = basis * z;
    const KreinVector r = reconstruct(f, cert.family, cert.duals, side);
    worst = std::max(worst, j_norm(r - f, s) / j_norm(f, s));
  }
  return worst;
}

// --- JSON ---------------------------------------------------------------

json encode_rows(const ComplexRows& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& z : row) r.push_back(detail::encode(z));
    out.push_back(std::move(r));
  }
  return out;
}

ComplexRows decode_rows(const json& j, const std::string& where) {
  if (!j.is_array()) detail::schema_error(where, "expected an array of rows");
  ComplexRows rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) detail::schema_error(rw, "expected a row");
    std::vector<std::complex<double>> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      row.push_back(detail::decode_complex(j[i][k], rw));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode_bounds(const FrameBounds& b) {
  return {{"A", b.a}, {"B", b.b}, {"A_prime", b.a_prime}, {"B_prime", b.b_prime}};
}

FrameBounds decode_bounds(const json& j, const std::string& w) {
  return {detail::decode_real(detail::require(j, "A", w), w + ".A"),
          detail::decode_real(detail::require(j, "B", w), w + ".B"),
          detail::decode_real(detail::require(j, "A_prime", w), w + ".A_prime"),
          detail::decode_real(detail::require(j, "B_prime", w), w + ".B_prime")};
}

json encode_verdict(const VerdictSummary& v) {
  json j = {{"is_riesz", v.is_riesz},
            {"complete_plus", v.complete_plus},
            {"complete_minus", v.complete_minus},
            {"failure_reason", v.failure_reason},
            {"margin_plus", v.margin_plus},
            {"margin_minus", v.margin_minus}};
  if (v.bounds) j["bounds"] = encode_bounds(*v.bounds);
  return j;
}

template <class T>
T get_as(const json& obj, const char* key, const std::string& where) {
  const json& v = detail::require(obj, key, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    detail::schema_error(where + "." + key, "wrong type");
  }
}

VerdictSummary decode_verdict(const json& j, const std::string& w) {
  VerdictSummary v;
  v.is_riesz = get_as<bool>(j, "is_riesz", w);
  v.complete_plus = get_as<bool>(j, "complete_plus", w);
  v.complete_minus = get_as<bool>(j, "complete_minus", w);
  v.failure_reason = get_as<std::string>(j, "failure_reason", w);
  if (!failure_reason_from_string(v.failure_reason)) {
    detail::schema_error(w + ".failure_reason", "unknown reason");
  }
  v.margin_plus = get_as<double>(j, "margin_plus", w);
  v.margin_minus = get_as<double>(j, "margin_minus", w);
  if (j.contains("bounds")) v.bounds = decode_bounds(j.at("bounds"), w + ".bounds");
  return v;
}

}  // namespace

Report analyze(const InstanceFile& inst, const AnalyzeOptions& opts) {
  const auto start = Clock::now();
  SpacePtr space = KreinSpace::create(inst.metric(opts.tol));
  const VectorFamily fam = split_indices(inst.family, space);

  Report r;
  r.dim = space->dim();
  r.p = space->fd.p;
  r.q = space->fd.q;
  r.i_plus = fam.i_plus;
  r.i_minus = fam.i_minus;
  r.neutral = fam.neutral;
  r.has_neutral = fam.has_neutral;
  r.membership = subspace_membership(fam);
  r.completeness = completeness(fam);

  const GramPair gp = gram_matrices(fam);
  const BesselBounds bb = bessel_from_gram(gp);
  r.gram = {gp.norm_plus, gp.norm_minus, gp.sigma_min_plus, gp.sigma_min_minus,
            bb.b, bb.b_prime, absolute_sum_bessel_test(fam).value_or(0.0)};

  r.via_inequalities = summarize_verdict(riesz_via_inequalities(fam, opts.tol));
  r.via_gram = summarize_verdict(riesz_via_gram(fam, opts.tol));
  try {
    factor_riesz(fam, opts.tol);
    r.factorable = true;
  } catch (const Error&) {
    r.factorable = false;
  }
  if (membership_clean(fam)) r.bounds = frame_inequality_bounds(fam);
  if (inst.u_plus && inst.u_minus) {
    try {
      r.operator_bounds = optimal_frame_bounds(
          OperatorPair::make(*inst.u_plus, *inst.u_minus, opts.tol));
    } catch (const Error&) {
      // Singular operators in the file: no operator bounds.
    }
  }
  if (opts.timings) r.timings = Timings{elapsed_ms(start), 0.0};
  return r;
}

Report certify_instance(const InstanceFile& inst, const CertifyOptions& opts) {
  Report r = analyze(inst, {opts.tol, opts.timings});
  if (!r.via_gram.is_riesz) return r;

  const auto start = Clock::now();
  SpacePtr space = KreinSpace::create(inst.metric(opts.tol));
  const VectorFamily fam = split_indices(inst.family, space);
  const RieszCertificate cert = certify(fam, opts.tol);

  CertificateSummary c;
  c.u_plus = to_rows(cert.ops.u_plus);
  c.u_minus = to_rows(cert.ops.u_minus);
  for (const auto& g : cert.duals.vectors) {
    c.duals.emplace_back(g.data(), g.data() + g.size());
  }
  c.bounds = cert.bounds;
  c.biorthogonality_residual = biorthogonality_residual(cert.family, cert.duals);
  Rng rng(opts.seed, 4);
  c.reconstruction_residual_plus =
      max_relative_reconstruction(cert, Half::Plus, opts.samples, rng);
  c.reconstruction_residual_minus =
      max_relative_reconstruction(cert, Half::Minus, opts.samples, rng);
  c.samples = opts.samples;
  r.certificate = std::move(c);
  if (r.timings) r.timings->certify_ms = elapsed_ms(start);
  return r;
}

std::string report_to_json(const Report& r, int indent) {
  json j;
  j["version"] = std::string(kFormatVersion);
  j["dim"] = r.dim;
  j["signature"] = {r.p, r.q};
  j["split"] = {{"i_plus", r.i_plus},
                {"i_minus", r.i_minus},
                {"neutral", r.neutral},
                {"has_neutral", r.has_neutral},
                {"membership", r.membership}};
  j["completeness"] = {{"plus", r.completeness.plus},
                       {"minus", r.completeness.minus},
                       {"total", r.completeness.total}};
  j["gram"] = {{"norm_plus", r.gram.norm_plus},
               {"norm_minus", r.gram.norm_minus},
               {"sigma_min_plus", r.gram.sigma_min_plus},
               {"sigma_min_minus", r.gram.sigma_min_minus},
               {"B", r.gram.bessel_b},
               {"B_prime", r.gram.bessel_b_prime},
               {"absolute_sum", r.gram.absolute_sum}};
  j["verdicts"] = {{"inequalities", encode_verdict(r.via_inequalities)},
                   {"gram", encode_verdict(r.via_gram)},
                   {"factorable", r.factorable}};
  if (r.bounds) j["bounds"] = encode_bounds(*r.bounds);
  if (r.operator_bounds) j["operator_bounds"] = encode_bounds(*r.operator_bounds);
  if (r.certificate) {
    const auto& c = *r.certificate;
    j["certificate"] = {{"u_plus", encode_rows(c.u_plus)},
                        {"u_minus", encode_rows(c.u_minus)},
                        {"duals", encode_rows(c.duals)},
                        {"bounds", encode_bounds(c.bounds)},
                        {"biorthogonality_residual", c.biorthogonality_residual},
                        {"reconstruction_residual_plus", c.reconstruction_residual_plus},
                        {"reconstruction_residual_minus", c.reconstruction_residual_minus},
                        {"samples", c.samples}};
  }
  if (r.timings) {
    j["timings"] = {{"analyze_ms", r.timings->analyze_ms},
                    {"certify_ms", r.timings->certify_ms}};
  }
  return j.dump(indent) + "\n";
}

Report report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const std::string root = "$";
  if (get_as<std::string>(j, "version", root) != kFormatVersion) {
    detail::schema_error("$.version", "expected \"krein/1\"");
  }
  Report r;
  r.dim = get_as<std::size_t>(j, "dim", root);
  const auto sig = get_as<std::vector<std::size_t>>(j, "signature", root);
  if (sig.size() != 2) detail::schema_error("$.signature", "expected [p, q]");
  r.p = sig[0];
  r.q = sig[1];

  const json& split = detail::require(j, "split", root);
  r.i_plus = get_as<std::vector<std::size_t>>(split, "i_plus", "$.split");
  r.i_minus = get_as<std::vector<std::size_t>>(split, "i_minus", "$.split");
  r.neutral = get_as<std::vector<bool>>(split, "neutral", "$.split");
  r.has_neutral = get_as<bool>(split, "has_neutral", "$.split");
  r.membership = get_as<std::vector<bool>>(split, "membership", "$.split");

  const json& comp = detail::require(j, "completeness", root);
  r.completeness = {get_as<bool>(comp, "plus", "$.completeness"),
                    get_as<bool>(comp, "minus", "$.completeness"),
                    get_as<bool>(comp, "total", "$.completeness")};

  const json& g = detail::require(j, "gram", root);
  r.gram = {get_as<double>(g, "norm_plus", "$.gram"),
            get_as<double>(g, "norm_minus", "$.gram"),
            get_as<double>(g, "sigma_min_plus", "$.gram"),
            get_as<double>(g, "sigma_min_minus", "$.gram"),
            get_as<double>(g, "B", "$.gram"),
            get_as<double>(g, "B_prime", "$.gram"),
            get_as<double>(g, "absolute_sum", "$.gram")};

  const json& v = detail::require(j, "verdicts", root);
  r.via_inequalities =
      decode_verdict(detail::require(v, "inequalities", "$.verdicts"),
                     "$.verdicts.inequalities");
  r.via_gram = decode_verdict(detail::require(v, "gram", "$.verdicts"),
                              "$.verdicts.gram");
  r.factorable = get_as<bool>(v, "factorable", "$.verdicts");

  if (j.contains("bounds")) r.bounds = decode_bounds(j.at("bounds"), "$.bounds");
  if (j.contains("operator_bounds")) {
    r.operator_bounds = decode_bounds(j.at("operator_bounds"), "$.operator_bounds");
  }
  if (j.contains("certificate")) {
    const json& c = j.at("certificate");
    const std::string w = "$.certificate";
    CertificateSummary cs;
    cs.u_plus = decode_rows(detail::require(c, "u_plus", w), w + ".u_plus");
    cs.u_minus = decode_rows(detail::require(c, "u_minus", w), w + ".u_minus");
    cs.duals = decode_rows(detail::require(c, "duals", w), w + ".duals");
    cs.bounds = decode_bounds(detail::require(c, "bounds", w), w + ".bounds");
    cs.biorthogonality_residual = get_as<double>(c, "biorthogonality_residual", w);
    cs.reconstruction_residual_plus =
        get_as<double>(c, "reconstruction_residual_plus", w);
    cs.reconstruction_residual_minus =
        get_as<double>(c, "reconstruction_residual_minus", w);
    cs.samples = get_as<std::uint64_t>(c, "samples", w);
    r.certificate = std::move(cs);
  }
  if (j.contains("timings")) {
    const json& t = j.at("timings");
    r.timings = Timings{get_as<double>(t, "analyze_ms", "$.timings"),
                        get_as<double>(t, "certify_ms", "$.timings")};
  }
  return r;
}

std::string summarize(const Report& r) {
  std::ostringstream out;
  char buf[256];
  out << "dimension " << r.dim << ", signature (" << r.p << ", " << r.q << ")\n";
  out << "family: " << r.i_plus.size() + r.i_minus.size() << " vectors, |I+| = "
      << r.i_plus.size() << ", |I-| = " << r.i_minus.size();
  if (r.has_neutral) out << " (neutral vectors present)";
  out << "\n";
  out << "complete: plus=" << (r.completeness.plus ? "yes" : "no")
      << " minus=" << (r.completeness.minus ? "yes" : "no") << "\n";
  std::snprintf(buf, sizeof buf,
                "gram: B = %.6g, B' = %.6g, sigma_min+ = %.6g, sigma_min- = %.6g, "
                "absolute sum = %.6g\n",
                r.gram.bessel_b, r.gram.bessel_b_prime, r.gram.sigma_min_plus,
                r.gram.sigma_min_minus, r.gram.absolute_sum);
  out << buf;
  auto verdict_line = [&](const char* name, const VerdictSummary& v) {
    std::snprintf(buf, sizeof buf, "%-12s riesz=%-3s reason=%-20s margins=(%.3e, %.3e)\n",
                  name, v.is_riesz ? "yes" : "no", v.failure_reason.c_str(),
                  v.margin_plus, v.margin_minus);
    out << buf;
  };
  verdict_line("inequalities", r.via_inequalities);
  verdict_line("gram", r.via_gram);
  out << "factorable: " << (r.factorable ? "yes" : "no") << "\n";
  if (r.bounds) {
    std::snprintf(buf, sizeof buf, "bounds: A = %.6g, B = %.6g, A' = %.6g, B' = %.6g\n",
                  r.bounds->a, r.bounds->b, r.bounds->a_prime, r.bounds->b_prime);
    out << buf;
  }
  if (r.certificate) {
    std::snprintf(buf, sizeof buf,
                  "certificate: biorthogonality residual %.3e, reconstruction "
                  "residual (+) %.3e (-) %.3e over %llu samples\n",
                  r.certificate->biorthogonality_residual,
                  r.certificate->reconstruction_residual_plus,
                  r.certificate->reconstruction_residual_minus,
                  static_cast<unsigned long long>(r.certificate->samples));
    out << buf;
  }
  if (r.timings) {
    std::snprintf(buf, sizeof buf, "time: analyze %.3f ms, certify %.3f ms\n",
                  r.timings->analyze_ms, r.timings->certify_ms);
    out << buf;
  }
  return out.str();
}

}  // namespace krein
