#include "krein/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json_codec.hpp"

namespace krein {

using detail::json;

KreinMetric InstanceFile::metric(const Tolerances& tol) const {
  if (signature) {
    return KreinMetric::from_signature(signature->first, signature->second, tol);
  }
  return KreinMetric(*matrix, tol);
}

InstanceFile parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) detail::schema_error("$", "top level must be an object");

  const json& version = detail::require(doc, "version", "$");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
    detail::schema_error("$.version", "expected \"krein/1\"");
  }

  InstanceFile inst;
  const json& metric = detail::require(doc, "metric", "$");
  const bool has_sig = metric.is_object() && metric.contains("signature");
  const bool has_mat = metric.is_object() && metric.contains("matrix");
  if (has_sig == has_mat) {
    detail::schema_error("$.metric", "exactly one of \"signature\" or \"matrix\"");
  }
  std::size_t dim = 0;
  if (has_sig) {
    const json& sig = metric.at("signature");
    if (!sig.is_array() || sig.size() != 2 || !sig[0].is_number_unsigned() ||
        !sig[1].is_number_unsigned()) {
      detail::schema_error("$.metric.signature", "expected [p, q] with p, q >= 0");
    }
    inst.signature = {sig[0].get<std::size_t>(), sig[1].get<std::size_t>()};
    dim = inst.signature->first + inst.signature->second;
    if (dim == 0) detail::schema_error("$.metric.signature", "p + q must be >= 1");
  } else {
    inst.matrix = detail::decode_matrix(metric.at("matrix"), "$.metric.matrix");
    if (inst.matrix->rows() != inst.matrix->cols() || inst.matrix->rows() == 0) {
      detail::schema_error("$.metric.matrix", "must be a nonempty square matrix");
    }
    dim = static_cast<std::size_t>(inst.matrix->rows());
  }

  const json& family = detail::require(doc, "family", "$");
  if (!family.is_array()) detail::schema_error("$.family", "expected an array");
  for (std::size_t n = 0; n < family.size(); ++n) {
    const std::string where = "$.family[" + std::to_string(n) + "]";
    KreinVector v = detail::decode_vector(family[n], where);
    if (static_cast<std::size_t>(v.size()) != dim) {
      detail::schema_error(where, "length " + std::to_string(v.size()) +
                                      " does not match dimension " +
                                      std::to_string(dim));
    }
    inst.family.push_back(std::move(v));
  }

  if (doc.contains("operators")) {
    const json& ops = doc.at("operators");
    inst.u_plus = detail::decode_matrix(detail::require(ops, "u_plus", "$.operators"),
                                        "$.operators.u_plus");
    inst.u_minus = detail::decode_matrix(detail::require(ops, "u_minus", "$.operators"),
                                         "$.operators.u_minus");
    if (static_cast<std::size_t>(inst.u_plus->rows() + inst.u_minus->rows()) != dim ||
        inst.u_plus->rows() != inst.u_plus->cols() ||
        inst.u_minus->rows() != inst.u_minus->cols()) {
      detail::schema_error("$.operators", "u_plus/u_minus must be square, sizes p and q");
    }
  }
  if (doc.contains("meta")) inst.meta_json = doc.at("meta").dump();
  return inst;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string emit_instance(const InstanceFile& inst) {
  json doc;
  doc["version"] = std::string(kFormatVersion);
  if (inst.signature) {
    doc["metric"]["signature"] = {inst.signature->first, inst.signature->second};
  } else {
    doc["metric"]["matrix"] = detail::encode(*inst.matrix);
  }
  doc["family"] = json::array();
  for (const auto& v : inst.family) doc["family"].push_back(detail::encode(v));
  if (inst.u_plus && inst.u_minus) {
    doc["operators"]["u_plus"] = detail::encode(*inst.u_plus);
    doc["operators"]["u_minus"] = detail::encode(*inst.u_minus);
  }
  if (!inst.meta_json.empty()) doc["meta"] = json::parse(inst.meta_json);
  return doc.dump(2) + "\n";
}

InstanceFile instance_from_generated(const GeneratedInstance& gen,
                                     const GenSpec& spec) {
  InstanceFile inst;
  inst.matrix = gen.space->metric.matrix();
  inst.family = gen.family.vectors;
  if (gen.ops) {
    inst.u_plus = gen.ops->u_plus;
    inst.u_minus = gen.ops->u_minus;
  }
  json meta;
  meta["seed"] = spec.seed;
  meta["cond_cap"] = spec.cond_cap;
  meta["defect"] = std::string(to_string(spec.defect));
  meta["expected_failure"] = std::string(to_string(gen.expected));
  meta["signature"] = {gen.space->fd.p, gen.space->fd.q};
  inst.meta_json = meta.dump();
  return inst;
}

}  // namespace krein
