#pragma once

// JSON encoding helpers shared by the instance and report codecs.

#include <string>

#include <json.hpp>

#include "krein/numerics.hpp"

namespace krein::detail {

using json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& where,
                                      const std::string& what) {
  throw Error(ErrorCode::SchemaError, where + ": " + what);
}

inline json encode(Complex z) { return json::array({z.real(), z.imag()}); }

inline json encode(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(encode(v(k)));
  return out;
}

/// Row-major list of rows.
inline json encode(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline double decode_real(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

inline Complex decode_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    schema_error(where, "complex numbers are [re, im] arrays");
  }
  return {decode_real(j[0], where + "[0]"), decode_real(j[1], where + "[1]")};
}

inline ComplexVector decode_vector(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of [re, im]");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) =
        decode_complex(j[k], where + "[" + std::to_string(k) + "]");
  }
  return v;
}

inline ComplexMatrix decode_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) schema_error(where + "[0]", "expected a row array");
    cols = static_cast<Eigen::Index>(j[0].size());
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    const ComplexVector row = decode_vector(j[static_cast<std::size_t>(i)], row_where);
    if (row.size() != cols) schema_error(row_where, "ragged matrix row");
    m.row(i) = row.transpose();
  }
  return m;
}

inline const json& require(const json& obj, const char* key,
                           const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    schema_error(where, std::string("missing field \"") + key + "\"");
  }
  return obj.at(key);
}

}  // namespace krein::detail
