// krein: command-line front end.
//
// Exit codes: 0 analyzed / verified, 1 semantic failure (not a Riesz basis,
// verification violations), 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "krein/report.hpp"
#include "krein/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kInputError = 2;

struct OutputFlags {
  bool json = false;
  std::string out;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw krein::Error(krein::ErrorCode::BadFlags, "cannot write " + path);
  f << text;
}

void emit(const OutputFlags& o, const std::string& json_text,
          const std::string& summary) {
  if (!o.out.empty()) {
    write_text(o.out, json_text);
    std::cout << summary;
  } else if (o.json) {
    std::cout << json_text;
  } else {
    std::cout << summary;
  }
}

void add_output_flags(CLI::App* cmd, OutputFlags& o) {
  cmd->add_flag("--json", o.json, "Print the JSON report on standard output");
  cmd->add_option("--out", o.out, "Write the JSON report to this file");
}

void add_tolerance_flags(CLI::App* cmd, krein::Tolerances& tol) {
  cmd->add_option("--rank-tol", tol.rank_tol, "Relative singular-value cutoff");
  cmd->add_option("--recon-tol", tol.recon_tol, "Relative reconstruction tolerance");
  cmd->add_option("--sym-tol", tol.sym_tol, "Relative Hermitian-deviation cutoff");
}

std::optional<std::pair<std::size_t, std::size_t>> parse_pair(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) return std::nullopt;
  return std::pair{a, b};
}

std::string duals_json(const krein::Report& r) {
  nlohmann::json j;
  j["version"] = std::string(krein::kFormatVersion);
  j["duals"] = nlohmann::json::array();
  for (const auto& row : r.certificate->duals) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& z : row) v.push_back({z.real(), z.imag()});
    j["duals"].push_back(std::move(v));
  }
  j["i_plus"] = r.i_plus;
  j["i_minus"] = r.i_minus;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz bases, Gram matrices and duals in finite-dimensional Krein spaces"};
  app.require_subcommand(1);

  // analyze
  std::string analyze_path;
  OutputFlags analyze_out;
  krein::AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Split, Gram data and both Riesz verdicts");
  analyze->add_option("path", analyze_path, "Instance file")->required();
  add_output_flags(analyze, analyze_out);
  add_tolerance_flags(analyze, analyze_opts.tol);
  analyze->add_flag("--timings", analyze_opts.timings, "Include timings in the report");

  // certify / duals
  std::string certify_path;
  OutputFlags certify_out;
  krein::CertifyOptions certify_opts;
  bool duals_only = false;
  auto add_certify = [&](CLI::App* cmd) {
    cmd->add_option("path", certify_path, "Instance file")->required();
    add_output_flags(cmd, certify_out);
    add_tolerance_flags(cmd, certify_opts.tol);
    cmd->add_option("--seed", certify_opts.seed, "Seed for sampled reconstruction vectors");
    cmd->add_option("--samples", certify_opts.samples, "Sampled vectors per half");
    cmd->add_flag("--timings", certify_opts.timings, "Include timings in the report");
  };
  auto* certify = app.add_subcommand("certify", "Factor U±, emit duals, check reconstruction");
  add_certify(certify);
  certify->add_flag("--duals-only", duals_only, "Emit only the dual family");
  auto* duals = app.add_subcommand("duals", "Alias of certify --duals-only");
  add_certify(duals);

  // gen
  krein::GenSpec gen_spec;
  std::optional<std::size_t> gen_dim;
  std::string gen_signature;
  std::string gen_defect = "none";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a deterministic random instance");
  gen->add_option("--seed", gen_spec.seed, "Random seed");
  gen->add_option("--dim", gen_dim, "Dimension (random signature)");
  gen->add_option("--signature", gen_signature, "Fixed signature p,q");
  gen->add_option("--cond-cap", gen_spec.cond_cap, "Max condition number of U±");
  gen->add_option("--defect", gen_defect,
                  "none|drop_vector|duplicate_vector|neutral_inject|mix_halves");
  gen->add_option("--out", gen_out, "Output path (default: standard output)");

  // verify
  krein::VerifyOptions verify_opts;
  std::string verify_dims;
  OutputFlags verify_out;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite on generated instances");
  verify->add_option("--trials", verify_opts.trials, "Number of trials");
  verify->add_option("--seed", verify_opts.seed, "Base seed");
  verify->add_option("--dims", verify_dims, "Dimension range min,max (default 1,12)");
  verify->add_option("--cond-cap", verify_opts.cond_cap, "Max condition number of U±");
  verify->add_option("--threads", verify_opts.threads, "Worker threads");
  verify->add_option("--samples", verify_opts.samples, "Random vectors per half");
  add_output_flags(verify, verify_out);
  add_tolerance_flags(verify, verify_opts.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (analyze->parsed()) {
      analyze_opts.tol.validate();
      const auto inst = krein::read_instance_file(analyze_path);
      const auto report = krein::analyze(inst, analyze_opts);
      emit(analyze_out, krein::report_to_json(report), krein::summarize(report));
      return kOk;
    }

    if (certify->parsed() || duals->parsed()) {
      duals_only = duals_only || duals->parsed();
      certify_opts.tol.validate();
      const auto inst = krein::read_instance_file(certify_path);
      const auto report = krein::certify_instance(inst, certify_opts);
      if (!report.certificate) {
        emit(certify_out, krein::report_to_json(report), krein::summarize(report));
        std::cerr << "not a Riesz basis: " << report.via_gram.failure_reason << "\n";
        return kSemanticFailure;
      }
      if (duals_only) {
        const std::string text = duals_json(report);
        if (!certify_out.out.empty()) {
          write_text(certify_out.out, text);
        } else {
          std::cout << text;
        }
      } else {
        emit(certify_out, krein::report_to_json(report), krein::summarize(report));
      }
      return kOk;
    }

    if (gen->parsed()) {
      if (gen_dim && !gen_signature.empty()) {
        throw krein::Error(krein::ErrorCode::BadFlags,
                           "--dim and --signature are mutually exclusive");
      }
      if (gen_dim) {
        gen_spec.dim_min = *gen_dim;
        gen_spec.dim_max = *gen_dim;
      }
      if (!gen_signature.empty()) {
        gen_spec.signature = parse_pair(gen_signature);
        if (!gen_spec.signature) {
          throw krein::Error(krein::ErrorCode::BadFlags, "--signature expects p,q");
        }
      }
      const auto defect = krein::defect_from_string(gen_defect);
      if (!defect) {
        throw krein::Error(krein::ErrorCode::BadFlags, "unknown defect " + gen_defect);
      }
      gen_spec.defect = *defect;
      gen_spec.validate();
      const auto instance = krein::generate_instance(gen_spec);
      const std::string text =
          krein::emit_instance(krein::instance_from_generated(instance, gen_spec));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_text(gen_out, text);
      }
      return kOk;
    }

    if (verify->parsed()) {
      if (!verify_dims.empty()) {
        const auto dims = parse_pair(verify_dims);
        if (!dims) throw krein::Error(krein::ErrorCode::BadFlags, "--dims expects min,max");
        verify_opts.dim_min = dims->first;
        verify_opts.dim_max = dims->second;
      }
      const auto summary = krein::run_verification(verify_opts);
      emit(verify_out, summary.to_json(), summary.to_text());
      return summary.violation_count() == 0 ? kOk : kSemanticFailure;
    }
  } catch (const krein::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
